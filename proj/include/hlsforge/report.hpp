#pragma once

#include <string>
#include <vector>

#include "hlsforge/kernel_model.hpp"

namespace hlsforge {

struct SynthesisReport {
  DesignMetrics metrics;
  std::vector<Warning> warnings;
  std::string raw_text;
};

// Parses the fixture report format:
//
//   == Latency ==
//   cycles: <int>
//   == Utilization ==
//   LUT: <int>
//   FF: <int>
//   DSP: <int>
//   BRAM: <int>
//   URAM: <int>
//   TimingMet: <true|false>
//
// Whitespace and thousands separators are tolerated; a missing section or
// field raises ParseError naming it. The format carries no clock, so the
// caller supplies the target frequency.
SynthesisReport parse_report(const std::string& raw, double clock_target_mhz = 200.0);

// Emits the fixture format for a synthesized report. Unsynthesized reports
// have no latency line to write and are rejected.
std::string serialize_report(const SynthesisReport& report);

}  // namespace hlsforge
