#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hlsforge {

enum class LanguageDialect { c, cpp, hls_cpp };

std::string to_string(LanguageDialect d);
LanguageDialect dialect_from_string(const std::string& s);

// One source file addressed by a path relative to its kernel root.
struct SourceFile {
  std::string path;
  std::string text;

  friend bool operator==(const SourceFile&, const SourceFile&) = default;
};

// A kernel as handed to the toolchain: opaque source text plus the top
// function the tool should treat as the entry point.
struct KernelSource {
  std::string id;
  std::vector<SourceFile> files;
  std::string top_function;
  LanguageDialect dialect = LanguageDialect::cpp;

  // Concatenated text of all files, in file order.
  std::string joined_text() const;

  friend bool operator==(const KernelSource&, const KernelSource&) = default;
};

// Checks the structural invariants: at least one file, non-empty top
// function, unique relative paths, no parent-directory escapes.
// Throws UsageError on violation.
void validate_kernel_source(const KernelSource& k);

// Builds a validated KernelSource with a content-derived id when none given.
KernelSource make_kernel_source(std::vector<SourceFile> files, std::string top_function,
                                LanguageDialect dialect = LanguageDialect::cpp,
                                std::string id = {});

struct Testbench {
  std::vector<SourceFile> files;
  std::string entry;
  double timeout_s = 60.0;

  friend bool operator==(const Testbench&, const Testbench&) = default;
};

void validate_testbench(const Testbench& tb);

// Latency is unknown whenever synthesis did not complete; arithmetic on an
// unknown latency is an error at the call sites that need a number.
using Cycles = std::optional<std::uint64_t>;

struct DesignMetrics {
  Cycles latency_cycles;
  std::uint64_t lut = 0;
  std::uint64_t ff = 0;
  std::uint64_t dsp = 0;
  std::uint64_t bram = 0;
  std::uint64_t uram = 0;
  double clock_target_mhz = 200.0;
  bool timing_met = false;
  bool synthesized = false;

  friend bool operator==(const DesignMetrics&, const DesignMetrics&) = default;
};

void validate_design_metrics(const DesignMetrics& m);

struct ResourceBudget {
  std::string profile = "u55c-like";
  std::uint64_t lut = 1'300'000;
  std::uint64_t ff = 2'600'000;
  std::uint64_t dsp = 9'000;
  std::uint64_t bram = 2'000;
  std::uint64_t uram = 960;
  double clock_target_mhz = 200.0;

  friend bool operator==(const ResourceBudget&, const ResourceBudget&) = default;
};

void validate_resource_budget(const ResourceBudget& b);

// True when every resource count fits under the budget caps.
bool fits_budget(const DesignMetrics& m, const ResourceBudget& b);

struct Warning {
  std::string code;
  std::string message;
  std::optional<std::string> location;

  friend bool operator==(const Warning&, const Warning&) = default;
};

struct EvaluationOutcome {
  bool verified = false;
  bool synthesized = false;
  bool within_budget = false;
  DesignMetrics metrics;
  std::vector<Warning> warnings;
  std::string log_excerpt;
};

// The (x, y, tb) unit plus the metrics and labels that ride with it.
struct DatasetTriple {
  KernelSource original;
  KernelSource optimized;
  Testbench testbench;
  DesignMetrics original_metrics;
  DesignMetrics optimized_metrics;
  std::optional<std::string> rationale;
  std::optional<int> performance_tag;  // 1..10
  std::optional<int> resource_tag;     // 1..10

  // Content-addressed id over all file texts; identical augmented variants
  // collapse to one id.
  std::string id() const;
};

struct ValidationVerdict {
  bool accepted = false;
  std::vector<std::string> reasons;  // empty iff accepted
};

// The dataset gate: the optimized side must synthesize and fit the budget,
// and must strictly beat the original's latency unless the original never
// synthesized (repair case).
ValidationVerdict validate_triple(const DatasetTriple& t, const ResourceBudget& b);

// original latency / new latency. Throws UsageError("undefined acceleration")
// on zero input.
double acceleration(std::uint64_t original_cycles, std::uint64_t new_cycles);

// ---- On-disk triple layout -------------------------------------------------
//
//   <dir>/original/<files>   <dir>/optimized/<files>   <dir>/tb/<files>
//   <dir>/metrics.json       fields named exactly as DesignMetrics
//   <dir>/meta.json          id, tags, rationale, tb entry/timeout, tops
//
// A corpus manifest (manifest.json) lists triple directories with ids.

void save_triple(const DatasetTriple& t, const std::filesystem::path& dir);
DatasetTriple load_triple(const std::filesystem::path& dir);

struct ManifestEntry {
  std::string id;
  std::string dir;  // relative to the manifest's directory
};

void save_manifest(const std::vector<ManifestEntry>& entries,
                   const std::filesystem::path& corpus_dir);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& corpus_dir);

}  // namespace hlsforge
