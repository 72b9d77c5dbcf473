#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hlsforge/kernel_model.hpp"
#include "hlsforge/report.hpp"

namespace hlsforge {

struct EvaluatorCapabilities {
  bool supports_verification = true;
  bool supports_synthesis = true;
  unsigned max_concurrent_jobs = 1;
  double typical_job_seconds = 1.0;
};

struct VerifyResult {
  bool passed = false;
  std::string reason;  // "timeout", "mismatch", ... ; empty on pass
};

// The environment every search module talks to: verify a kernel against its
// testbench, synthesize it, report metrics. Implementations must tolerate
// concurrent calls up to max_concurrent_jobs.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual EvaluatorCapabilities capabilities() const = 0;
  virtual VerifyResult verify(const KernelSource& kernel, const Testbench& tb) = 0;
  virtual SynthesisReport synthesize(const KernelSource& kernel, const ResourceBudget& budget) = 0;
};

// Runs verify then synthesize and folds both into one outcome with the
// budget check applied.
EvaluationOutcome evaluate_kernel(Evaluator& env, const KernelSource& kernel,
                                  const Testbench& tb, const ResourceBudget& budget);

// ---- deterministic analytic evaluator ---------------------------------------

// Evaluates MiniKernel descriptions through the analytic cost model. Pure and
// stateless: repeated calls yield identical reports. Verification passes
// unless the fault table names the kernel (by id or content hash), which is
// how tests inject verification failures.
class CostModelEvaluator : public Evaluator {
 public:
  CostModelEvaluator() = default;
  explicit CostModelEvaluator(std::map<std::string, std::string> fault_table)
      : fault_table_(std::move(fault_table)) {}

  EvaluatorCapabilities capabilities() const override;
  VerifyResult verify(const KernelSource& kernel, const Testbench& tb) override;
  SynthesisReport synthesize(const KernelSource& kernel, const ResourceBudget& budget) override;

 private:
  std::map<std::string, std::string> fault_table_;
};

// ---- external tool adapter ---------------------------------------------------

// Maps raw tool-log lines to the closed warning taxonomy via regex patterns.
struct WarningPattern {
  std::string pattern;  // ECMAScript regex, matched case-insensitively
  std::string code;     // ii_breach, unroll_violation, unsupported_construct,
                        // resource_pressure, dependence_conflict
};

std::vector<WarningPattern> default_warning_patterns();
std::vector<Warning> classify_log(const std::string& log,
                                  const std::vector<WarningPattern>& patterns);

struct ToolConfig {
  std::string tool_bin;           // synthesis entry point, invoked as: <bin> <job_dir>
  std::string part = "xcu55c-fsvh2892-2L-e";
  double clock_mhz = 200.0;
  double timeout_s = 900.0;
  std::string workspace;          // job directories live here
  std::string verify_compiler = "c++ -std=c++17 -O1";
  unsigned max_concurrent_jobs = 2;
  std::vector<WarningPattern> warning_patterns = default_warning_patterns();
};

// Drives a synthesis tool as a subprocess with one project directory per job.
// Contract with the tool: it receives the job directory (containing src/ and
// job.json), writes report.rpt in the fixture format plus log.txt, and exits
// zero iff synthesis succeeded. Job directories are kept on failure for
// debugging and removed on success.
//
// Verification compiles the kernel and testbench with the configured host
// compiler and runs the binary under the testbench timeout; exit 0 is a pass.
class ExternalEvaluator : public Evaluator {
 public:
  explicit ExternalEvaluator(ToolConfig config);

  EvaluatorCapabilities capabilities() const override;
  VerifyResult verify(const KernelSource& kernel, const Testbench& tb) override;
  SynthesisReport synthesize(const KernelSource& kernel, const ResourceBudget& budget) override;

 private:
  std::filesystem::path make_job_dir(const std::string& tag, const KernelSource& kernel) const;

  ToolConfig config_;
};

}  // namespace hlsforge
