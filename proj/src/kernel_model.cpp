#include "hlsforge/kernel_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

#include "hlsforge/util.hpp"

namespace hlsforge {

using nlohmann::json;

std::string to_string(LanguageDialect d) {
  switch (d) {
    case LanguageDialect::c: return "c";
    case LanguageDialect::cpp: return "cpp";
    case LanguageDialect::hls_cpp: return "hls_cpp";
  }
  return "cpp";
}

LanguageDialect dialect_from_string(const std::string& s) {
  if (s == "c") return LanguageDialect::c;
  if (s == "cpp") return LanguageDialect::cpp;
  if (s == "hls_cpp") return LanguageDialect::hls_cpp;
  throw ParseError("unknown language dialect: " + s);
}

std::string KernelSource::joined_text() const {
  std::vector<std::string> parts;
  parts.reserve(files.size());
  for (const auto& f : files) parts.push_back(f.text);
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

namespace {

bool path_escapes(const std::string& rel) {
  if (rel.empty()) return true;
  if (rel.front() == '/') return true;
  for (const auto& part : split(rel, '/')) {
    if (part == "..") return true;
  }
  return false;
}

void validate_files(const std::vector<SourceFile>& files, const char* what) {
  if (files.empty()) throw UsageError(std::string(what) + ": needs at least one file");
  std::set<std::string> seen;
  for (const auto& f : files) {
    if (path_escapes(f.path))
      throw UsageError(std::string(what) + ": bad relative path: " + f.path);
    if (!seen.insert(f.path).second)
      throw UsageError(std::string(what) + ": duplicate path: " + f.path);
  }
}

std::string hash_files(const std::vector<SourceFile>& files) {
  std::vector<std::string> parts;
  parts.reserve(files.size());
  for (const auto& f : files) parts.push_back(f.text);
  return content_hash(parts);
}

}  // namespace

void validate_kernel_source(const KernelSource& k) {
  validate_files(k.files, "kernel");
  if (trim(k.top_function).empty()) throw UsageError("kernel: top_function is empty");
}

KernelSource make_kernel_source(std::vector<SourceFile> files, std::string top_function,
                                LanguageDialect dialect, std::string id) {
  KernelSource k;
  k.files = std::move(files);
  k.top_function = std::move(top_function);
  k.dialect = dialect;
  k.id = id.empty() ? hash_files(k.files) : std::move(id);
  validate_kernel_source(k);
  return k;
}

void validate_testbench(const Testbench& tb) {
  validate_files(tb.files, "testbench");
  if (!(tb.timeout_s > 0)) throw UsageError("testbench: timeout_s must be positive");
}

void validate_design_metrics(const DesignMetrics& m) {
  if (!m.synthesized && m.latency_cycles.has_value())
    throw UsageError("metrics: latency must be unknown when not synthesized");
  if (!(m.clock_target_mhz > 0)) throw UsageError("metrics: clock target must be positive");
}

void validate_resource_budget(const ResourceBudget& b) {
  if (b.lut == 0 || b.ff == 0 || b.dsp == 0 || b.bram == 0 || b.uram == 0)
    throw UsageError("budget: all resource caps must be positive");
  if (!(b.clock_target_mhz > 0)) throw UsageError("budget: clock target must be positive");
}

bool fits_budget(const DesignMetrics& m, const ResourceBudget& b) {
  return m.lut <= b.lut && m.ff <= b.ff && m.dsp <= b.dsp && m.bram <= b.bram &&
         m.uram <= b.uram;
}

std::string DatasetTriple::id() const {
  std::vector<std::string> parts;
  for (const auto& f : original.files) parts.push_back(f.text);
  for (const auto& f : optimized.files) parts.push_back(f.text);
  for (const auto& f : testbench.files) parts.push_back(f.text);
  return content_hash(parts);
}

ValidationVerdict validate_triple(const DatasetTriple& t, const ResourceBudget& b) {
  ValidationVerdict v;
  if (!t.optimized_metrics.synthesized) {
    v.reasons.push_back("optimized design did not synthesize");
  } else if (!t.optimized_metrics.latency_cycles.has_value()) {
    v.reasons.push_back("optimized design has no latency estimate");
  }
  if (!fits_budget(t.optimized_metrics, b)) {
    v.reasons.push_back("optimized design exceeds resource budget");
  }
  if (t.original_metrics.synthesized && t.optimized_metrics.synthesized &&
      t.original_metrics.latency_cycles && t.optimized_metrics.latency_cycles) {
    if (*t.optimized_metrics.latency_cycles >= *t.original_metrics.latency_cycles)
      v.reasons.push_back("no latency improvement");
  }
  for (auto tag : {t.performance_tag, t.resource_tag}) {
    if (tag && (*tag < 1 || *tag > 10)) v.reasons.push_back("tag out of range [1,10]");
  }
  v.accepted = v.reasons.empty();
  return v;
}

double acceleration(std::uint64_t original_cycles, std::uint64_t new_cycles) {
  if (original_cycles == 0 || new_cycles == 0)
    throw UsageError("undefined acceleration");
  return static_cast<double>(original_cycles) / static_cast<double>(new_cycles);
}

// ---- serialization ----------------------------------------------------------

namespace {

json metrics_to_json(const DesignMetrics& m) {
  json j;
  j["latency_cycles"] =
      m.latency_cycles ? json(*m.latency_cycles) : json(nullptr);
  j["lut"] = m.lut;
  j["ff"] = m.ff;
  j["dsp"] = m.dsp;
  j["bram"] = m.bram;
  j["uram"] = m.uram;
  j["clock_target_mhz"] = m.clock_target_mhz;
  j["timing_met"] = m.timing_met;
  j["synthesized"] = m.synthesized;
  return j;
}

DesignMetrics metrics_from_json(const json& j) {
  DesignMetrics m;
  if (!j.at("latency_cycles").is_null())
    m.latency_cycles = j.at("latency_cycles").get<std::uint64_t>();
  m.lut = j.at("lut").get<std::uint64_t>();
  m.ff = j.at("ff").get<std::uint64_t>();
  m.dsp = j.at("dsp").get<std::uint64_t>();
  m.bram = j.at("bram").get<std::uint64_t>();
  m.uram = j.at("uram").get<std::uint64_t>();
  m.clock_target_mhz = j.at("clock_target_mhz").get<double>();
  m.timing_met = j.at("timing_met").get<bool>();
  m.synthesized = j.at("synthesized").get<bool>();
  return m;
}

void save_files(const std::filesystem::path& root, const std::vector<SourceFile>& files) {
  for (const auto& f : files) write_text_file(root / f.path, f.text);
}

std::vector<SourceFile> load_files(const std::filesystem::path& root,
                                   const std::vector<std::string>& names) {
  std::vector<SourceFile> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back({n, read_text_file(root / n)});
  return out;
}

json file_names(const std::vector<SourceFile>& files) {
  json arr = json::array();
  for (const auto& f : files) arr.push_back(f.path);
  return arr;
}

}  // namespace

void save_triple(const DatasetTriple& t, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_files(dir / "original", t.original.files);
  save_files(dir / "optimized", t.optimized.files);
  save_files(dir / "tb", t.testbench.files);

  json metrics;
  metrics["original"] = metrics_to_json(t.original_metrics);
  metrics["optimized"] = metrics_to_json(t.optimized_metrics);
  write_text_file(dir / "metrics.json", metrics.dump(2) + "\n");

  json meta;
  meta["id"] = t.id();
  meta["problem_id"] = t.original.id;
  meta["original_files"] = file_names(t.original.files);
  meta["original_top"] = t.original.top_function;
  meta["original_dialect"] = to_string(t.original.dialect);
  meta["optimized_files"] = file_names(t.optimized.files);
  meta["optimized_top"] = t.optimized.top_function;
  meta["optimized_dialect"] = to_string(t.optimized.dialect);
  meta["tb_files"] = file_names(t.testbench.files);
  meta["tb_entry"] = t.testbench.entry;
  meta["tb_timeout_s"] = t.testbench.timeout_s;
  meta["rationale"] = t.rationale ? json(*t.rationale) : json(nullptr);
  meta["performance_tag"] = t.performance_tag ? json(*t.performance_tag) : json(nullptr);
  meta["resource_tag"] = t.resource_tag ? json(*t.resource_tag) : json(nullptr);
  write_text_file(dir / "meta.json", meta.dump(2) + "\n");
}

DatasetTriple load_triple(const std::filesystem::path& dir) {
  json meta = json::parse(read_text_file(dir / "meta.json"));
  json metrics = json::parse(read_text_file(dir / "metrics.json"));

  DatasetTriple t;
  t.original = make_kernel_source(
      load_files(dir / "original", meta.at("original_files").get<std::vector<std::string>>()),
      meta.at("original_top").get<std::string>(),
      dialect_from_string(meta.at("original_dialect").get<std::string>()),
      meta.at("problem_id").get<std::string>());
  t.optimized = make_kernel_source(
      load_files(dir / "optimized", meta.at("optimized_files").get<std::vector<std::string>>()),
      meta.at("optimized_top").get<std::string>(),
      dialect_from_string(meta.at("optimized_dialect").get<std::string>()));
  t.testbench.files =
      load_files(dir / "tb", meta.at("tb_files").get<std::vector<std::string>>());
  t.testbench.entry = meta.at("tb_entry").get<std::string>();
  t.testbench.timeout_s = meta.at("tb_timeout_s").get<double>();
  validate_testbench(t.testbench);
  t.original_metrics = metrics_from_json(metrics.at("original"));
  t.optimized_metrics = metrics_from_json(metrics.at("optimized"));
  if (!meta.at("rationale").is_null()) t.rationale = meta.at("rationale").get<std::string>();
  if (!meta.at("performance_tag").is_null())
    t.performance_tag = meta.at("performance_tag").get<int>();
  if (!meta.at("resource_tag").is_null())
    t.resource_tag = meta.at("resource_tag").get<int>();
  return t;
}

void save_manifest(const std::vector<ManifestEntry>& entries,
                   const std::filesystem::path& corpus_dir) {
  json arr = json::array();
  for (const auto& e : entries) arr.push_back({{"id", e.id}, {"dir", e.dir}});
  write_text_file(corpus_dir / "manifest.json", arr.dump(2) + "\n");
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& corpus_dir) {
  json arr = json::parse(read_text_file(corpus_dir / "manifest.json"));
  std::vector<ManifestEntry> out;
  for (const auto& e : arr) {
    out.push_back({e.at("id").get<std::string>(), e.at("dir").get<std::string>()});
  }
  return out;
}

}  // namespace hlsforge
