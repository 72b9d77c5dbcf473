#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlsforge/kernel_model.hpp"

namespace hlsforge {

// A desk-scale surrogate for real HLS input: enough structure to cost loop
// pipelining, unrolling, and array partitioning deterministically, written
// in a small line-based text format:
//
//   kernel <name> [recursive=1]
//   array <id> size=<n> [partition=<n>]
//   loop <id> trips=<n> body=<n> [carried=1] [dtype=int|float|fixed]
//             [calls=std_sqrt,...] [accesses=A,...]
//     loop ...                         # 2-space indent nests loops
//   pipeline <loop_id> ii=<n>
//   unroll <loop_id> factor=<n>
//   array_partition <array_id> factor=<n>
//
// '#' starts a comment. Directive lines may appear anywhere after the kernel
// line; a later directive for the same site replaces the earlier one.

enum class NumericType { integer, fixed_point, floating_point };

struct LoopRecord {
  std::string id;
  std::uint64_t trip_count = 1;
  std::uint64_t body_op_latency = 1;
  bool carried_dependence = false;
  NumericType dtype = NumericType::integer;
  std::vector<std::string> calls;     // std_sqrt, hls_exp, ...
  std::vector<std::string> accesses;  // array ids read/written by the body
  std::vector<LoopRecord> children;
};

struct ArrayRecord {
  std::string id;
  std::uint64_t size = 1;
  std::uint64_t partition_factor = 1;
};

enum class DirectiveKind { pipeline, unroll, array_partition };

struct Directive {
  DirectiveKind kind = DirectiveKind::pipeline;
  std::string site_id;
  std::uint64_t value = 1;  // ii for pipeline, factor otherwise
};

struct MiniKernel {
  std::string name;
  bool recursive = false;
  std::vector<LoopRecord> loops;
  std::vector<ArrayRecord> arrays;
  std::vector<Directive> directives;
};

// Throws ParseError with a line number on malformed text or on directives
// whose site ids reference no loop or array.
MiniKernel parse_minikernel(const std::string& text);

// Canonical form: arrays sorted by id, loop attributes in fixed order,
// directives deduplicated and sorted. Two kernels that differ only in
// directive insertion order serialize identically, so content hashes merge.
std::string serialize_minikernel(const MiniKernel& mk);

void validate_minikernel(const MiniKernel& mk);

// All loop ids in tree order, and a lookup helper.
std::vector<std::string> loop_ids(const MiniKernel& mk);
const LoopRecord* find_loop(const MiniKernel& mk, const std::string& id);
bool has_array(const MiniKernel& mk, const std::string& id);

// Innermost loops: loops with no children, in tree order.
std::vector<std::string> innermost_loop_ids(const MiniKernel& mk);

// Wraps a MiniKernel as a single-file KernelSource (path "kernel.mk").
KernelSource minikernel_to_source(const MiniKernel& mk);

// ---- analytic cost model ----------------------------------------------------
//
// Per-iteration latency of a loop is dtype-weighted body ops plus call costs
// plus the latencies of its children run back to back. Sequential loops cost
// trips * iteration; pipelined loops cost iteration + II_eff * (trips - 1)
// with II_eff raised to the carried-dependence distance (the body latency)
// and to the child drain time. Unrolling divides trips (ceiling) by the
// effective factor, which is clamped by the trip count, by the smallest
// partition factor among accessed arrays (memory ports), and to 1 under a
// carried dependence. Resource counts scale with the requested factor,
// replicated hardware included, whether or not the ports can feed it.

struct CostBreakdown {
  std::uint64_t latency_cycles = 1;
  std::uint64_t lut = 0;
  std::uint64_t ff = 0;
  std::uint64_t dsp = 0;
  std::uint64_t bram = 0;
  std::uint64_t uram = 0;
  bool timing_met = true;
  std::vector<Warning> warnings;
};

CostBreakdown cost_model_run(const MiniKernel& mk);

}  // namespace hlsforge
