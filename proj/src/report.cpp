#include "hlsforge/report.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "hlsforge/util.hpp"

namespace hlsforge {

namespace {

std::uint64_t parse_count(const std::string& value, const std::string& field) {
  std::string digits;
  for (char c : value) {
    if (c >= '0' && c <= '9') digits += c;
    else if (c == ',' || c == '_' || c == ' ') continue;  // thousands separators
    else throw ParseError("bad integer for " + field + ": " + value);
  }
  if (digits.empty()) throw ParseError("bad integer for " + field + ": " + value);
  return std::stoull(digits);
}

}  // namespace

SynthesisReport parse_report(const std::string& raw, double clock_target_mhz) {
  if (trim(raw).empty()) throw ParseError("empty report");

  std::string section;
  std::map<std::string, std::string> latency_fields;
  std::map<std::string, std::string> util_fields;

  for (const auto& line_raw : split(raw, '\n')) {
    const std::string line = trim(line_raw);
    if (line.empty()) continue;
    if (starts_with(line, "==")) {
      section = to_lower(trim(line.substr(2, line.rfind("==") - 2)));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;  // lenient: skip prose lines
    const std::string key = to_lower(trim(line.substr(0, colon)));
    const std::string value = trim(line.substr(colon + 1));
    if (section == "latency") latency_fields[key] = value;
    else if (section == "utilization") util_fields[key] = value;
  }

  if (latency_fields.empty()) throw ParseError("missing section: == Latency ==");
  if (util_fields.empty()) throw ParseError("missing section: == Utilization ==");

  auto latency_field = [&](const char* key) -> const std::string& {
    auto it = latency_fields.find(key);
    if (it == latency_fields.end())
      throw ParseError(std::string("missing latency field: ") + key);
    return it->second;
  };
  auto util_field = [&](const char* key) -> const std::string& {
    auto it = util_fields.find(key);
    if (it == util_fields.end())
      throw ParseError(std::string("missing utilization field: ") + key);
    return it->second;
  };

  SynthesisReport rep;
  rep.raw_text = raw;
  rep.metrics.latency_cycles = parse_count(latency_field("cycles"), "cycles");
  rep.metrics.lut = parse_count(util_field("lut"), "LUT");
  rep.metrics.ff = parse_count(util_field("ff"), "FF");
  rep.metrics.dsp = parse_count(util_field("dsp"), "DSP");
  rep.metrics.bram = parse_count(util_field("bram"), "BRAM");
  rep.metrics.uram = parse_count(util_field("uram"), "URAM");
  const std::string timing = to_lower(util_field("timingmet"));
  if (timing != "true" && timing != "false")
    throw ParseError("bad TimingMet value: " + timing);
  rep.metrics.timing_met = timing == "true";
  rep.metrics.synthesized = true;
  rep.metrics.clock_target_mhz = clock_target_mhz;
  return rep;
}

std::string serialize_report(const SynthesisReport& report) {
  const DesignMetrics& m = report.metrics;
  if (!m.synthesized || !m.latency_cycles)
    throw UsageError("cannot serialize an unsynthesized report");
  std::ostringstream out;
  out << "== Latency ==\n";
  out << "cycles: " << *m.latency_cycles << "\n";
  out << "== Utilization ==\n";
  out << "LUT: " << m.lut << "\n";
  out << "FF: " << m.ff << "\n";
  out << "DSP: " << m.dsp << "\n";
  out << "BRAM: " << m.bram << "\n";
  out << "URAM: " << m.uram << "\n";
  out << "TimingMet: " << (m.timing_met ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace hlsforge
