#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hlsforge {

// Raised when a tool, process, or the filesystem fails -- retryable,
// never a domain verdict.
struct InfraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised on malformed inputs (reports, config, sites files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an operation is called outside its contract.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a over 128 bits, rendered as 32 hex chars. Content ids for kernels,
// triples, and search states.
std::string content_hash(std::string_view data);
std::string content_hash(const std::vector<std::string>& parts);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool starts_with(std::string_view s, std::string_view prefix);
std::string to_lower(std::string_view s);

// Fixed-format double rendering so artifacts are byte-stable across runs.
std::string fmt_double(double v, int precision = 6);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view text);

struct CommandResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string output;  // combined stdout+stderr
};

// Runs `command` under /bin/sh with a wall-clock timeout. Spawn failure is
// reported in the result, not thrown, so callers can classify it.
CommandResult run_command(const std::string& command, double timeout_s,
                          const std::optional<std::filesystem::path>& cwd = {});

// Applies fn(i) for i in [0, n) on up to `jobs` threads. jobs <= 1 runs
// inline. fn must be safe to call concurrently.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace hlsforge
