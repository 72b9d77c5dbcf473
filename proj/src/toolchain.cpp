#include "hlsforge/toolchain.hpp"

#include <nlohmann/json.hpp>

#include <regex>
#include <sstream>

#include "hlsforge/minikernel.hpp"
#include "hlsforge/util.hpp"

namespace hlsforge {

using nlohmann::json;

EvaluationOutcome evaluate_kernel(Evaluator& env, const KernelSource& kernel,
                                  const Testbench& tb, const ResourceBudget& budget) {
  EvaluationOutcome out;
  const VerifyResult vr = env.verify(kernel, tb);
  out.verified = vr.passed;

  SynthesisReport rep = env.synthesize(kernel, budget);
  out.synthesized = rep.metrics.synthesized;
  out.metrics = rep.metrics;
  out.warnings = rep.warnings;
  out.within_budget = rep.metrics.synthesized && fits_budget(rep.metrics, budget);

  std::ostringstream log;
  if (!vr.passed) log << "verification failed: " << vr.reason << "\n";
  log << rep.raw_text;
  out.log_excerpt = log.str();
  return out;
}

// ---- CostModelEvaluator ------------------------------------------------------

EvaluatorCapabilities CostModelEvaluator::capabilities() const {
  return {true, true, 64, 0.0001};
}

VerifyResult CostModelEvaluator::verify(const KernelSource& kernel, const Testbench&) {
  if (auto it = fault_table_.find(kernel.id); it != fault_table_.end())
    return {false, it->second};
  if (auto it = fault_table_.find(content_hash(kernel.joined_text()));
      it != fault_table_.end())
    return {false, it->second};
  return {true, {}};
}

SynthesisReport CostModelEvaluator::synthesize(const KernelSource& kernel,
                                               const ResourceBudget& budget) {
  SynthesisReport rep;
  MiniKernel mk;
  try {
    mk = parse_minikernel(kernel.joined_text());
  } catch (const ParseError& e) {
    rep.metrics.synthesized = false;
    rep.metrics.clock_target_mhz = budget.clock_target_mhz;
    rep.warnings.push_back(
        {"unsupported_construct", std::string("not a recognizable kernel: ") + e.what(), {}});
    rep.raw_text = std::string("synthesis failed: ") + e.what() + "\n";
    return rep;
  }

  if (mk.recursive) {
    rep.metrics.synthesized = false;
    rep.metrics.clock_target_mhz = budget.clock_target_mhz;
    rep.warnings.push_back(
        {"unsupported_construct", "recursion is not synthesizable", mk.name});
    rep.raw_text = "synthesis failed: recursive call graph\n";
    return rep;
  }

  const CostBreakdown cost = cost_model_run(mk);
  rep.metrics.synthesized = true;
  rep.metrics.latency_cycles = cost.latency_cycles;
  rep.metrics.lut = cost.lut;
  rep.metrics.ff = cost.ff;
  rep.metrics.dsp = cost.dsp;
  rep.metrics.bram = cost.bram;
  rep.metrics.uram = cost.uram;
  rep.metrics.timing_met = cost.timing_met;
  rep.metrics.clock_target_mhz = budget.clock_target_mhz;
  rep.warnings = cost.warnings;
  rep.raw_text = serialize_report(rep);
  return rep;
}

// ---- ExternalEvaluator -------------------------------------------------------

std::vector<WarningPattern> default_warning_patterns() {
  return {
      {"initiation interval|ii.*(violation|breach)", "ii_breach"},
      {"unroll.*(fail|violat|cannot)", "unroll_violation"},
      {"unsupported|recursion|recursive|dynamic (memory|alloc)|malloc", "unsupported_construct"},
      {"resource.*(exceed|over|pressure)|utilization.*exceed", "resource_pressure"},
      {"dependence|dependency", "dependence_conflict"},
  };
}

std::vector<Warning> classify_log(const std::string& log,
                                  const std::vector<WarningPattern>& patterns) {
  std::vector<std::pair<std::regex, std::string>> compiled;
  compiled.reserve(patterns.size());
  for (const auto& p : patterns)
    compiled.emplace_back(std::regex(p.pattern, std::regex::icase), p.code);

  std::vector<Warning> out;
  for (const auto& line : split(log, '\n')) {
    for (const auto& [re, code] : compiled) {
      if (std::regex_search(line, re)) {
        out.push_back({code, trim(line), {}});
        break;  // first matching pattern wins per line
      }
    }
  }
  return out;
}

ExternalEvaluator::ExternalEvaluator(ToolConfig config) : config_(std::move(config)) {
  if (config_.workspace.empty())
    config_.workspace = (std::filesystem::temp_directory_path() / "hlsforge-jobs").string();
}

EvaluatorCapabilities ExternalEvaluator::capabilities() const {
  return {true, true, config_.max_concurrent_jobs, config_.timeout_s / 4};
}

std::filesystem::path ExternalEvaluator::make_job_dir(const std::string& tag,
                                                      const KernelSource& kernel) const {
  const std::string h = content_hash(kernel.joined_text()).substr(0, 16);
  auto dir = std::filesystem::path(config_.workspace) / (tag + "-" + h);
  std::filesystem::create_directories(dir / "src");
  return dir;
}

VerifyResult ExternalEvaluator::verify(const KernelSource& kernel, const Testbench& tb) {
  const auto dir = make_job_dir("verify", kernel);
  std::vector<std::string> sources;
  for (const auto& f : kernel.files) {
    write_text_file(dir / "src" / f.path, f.text);
    sources.push_back("src/" + f.path);
  }
  for (const auto& f : tb.files) {
    write_text_file(dir / "src" / f.path, f.text);
    sources.push_back("src/" + f.path);
  }

  std::ostringstream compile;
  compile << config_.verify_compiler << " -Isrc";
  for (const auto& s : sources) {
    if (s.ends_with(".c") || s.ends_with(".cc") || s.ends_with(".cpp")) compile << " " << s;
  }
  compile << " -o tb_exe";

  CommandResult cr = run_command(compile.str(), config_.timeout_s, dir);
  if (cr.spawn_failed) throw InfraError("verify compiler not available: " + config_.verify_compiler);
  if (cr.exit_code != 0) {
    write_text_file(dir / "build.log", cr.output);
    return {false, "build error"};
  }

  CommandResult run = run_command("./tb_exe", tb.timeout_s, dir);
  if (run.spawn_failed) throw InfraError("testbench binary did not start");
  write_text_file(dir / "run.log", run.output);
  if (run.timed_out) return {false, "timeout"};
  if (run.exit_code != 0) return {false, "mismatch"};
  std::filesystem::remove_all(dir);
  return {true, {}};
}

SynthesisReport ExternalEvaluator::synthesize(const KernelSource& kernel,
                                              const ResourceBudget& budget) {
  if (config_.tool_bin.empty()) throw InfraError("no synthesis tool configured");

  const auto dir = make_job_dir("synth", kernel);
  for (const auto& f : kernel.files) write_text_file(dir / "src" / f.path, f.text);

  json job;
  job["top"] = kernel.top_function;
  job["part"] = config_.part;
  job["clock_mhz"] = config_.clock_mhz;
  json files = json::array();
  for (const auto& f : kernel.files) files.push_back("src/" + f.path);
  job["files"] = files;
  write_text_file(dir / "job.json", job.dump(2) + "\n");

  CommandResult cr = run_command(config_.tool_bin + " " + dir.string(), config_.timeout_s);
  if (cr.spawn_failed)
    throw InfraError("synthesis tool not installed or not executable: " + config_.tool_bin);
  if (cr.timed_out) throw InfraError("synthesis timed out after " +
                                     fmt_double(config_.timeout_s, 0) + "s: " + dir.string());

  std::string log = cr.output;
  const auto log_path = dir / "log.txt";
  if (std::filesystem::exists(log_path)) log += read_text_file(log_path);

  SynthesisReport rep;
  rep.warnings = classify_log(log, config_.warning_patterns);

  const auto report_path = dir / "report.rpt";
  if (cr.exit_code == 0 && std::filesystem::exists(report_path)) {
    const std::string raw = read_text_file(report_path);
    SynthesisReport parsed = parse_report(raw, config_.clock_mhz);
    rep.metrics = parsed.metrics;
    rep.raw_text = raw;
    std::filesystem::remove_all(dir);  // retained only on failure
    return rep;
  }

  rep.metrics.synthesized = false;
  rep.metrics.clock_target_mhz = budget.clock_target_mhz;
  rep.raw_text = log;
  return rep;
}

}  // namespace hlsforge
