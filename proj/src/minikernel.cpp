#include "hlsforge/minikernel.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hlsforge/util.hpp"

namespace hlsforge {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no, const char* what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line_no, std::string("bad ") + what + " value: " + s);
  return std::stoull(s);
}

struct Token {
  std::string key;
  std::string value;  // empty for bare words
};

// "trips=100 calls=a,b" -> [(trips,100),(calls,"a,b")]
std::vector<Token> parse_attrs(const std::vector<std::string>& words, std::size_t line_no) {
  std::vector<Token> out;
  for (const auto& w : words) {
    auto eq = w.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected key=value, got: " + w);
    out.push_back({w.substr(0, eq), w.substr(eq + 1)});
  }
  return out;
}

std::vector<std::string> parse_list(const std::string& v) {
  std::vector<std::string> out;
  for (auto& item : split(v, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

const std::set<std::string>& known_calls() {
  static const std::set<std::string> calls = {
      "std_sqrt", "std_exp", "std_log", "std_sin", "std_cos", "std_div", "std_mod",
      "hls_sqrt", "hls_exp", "hls_log", "hls_sin", "hls_cos", "hls_div", "hls_mod"};
  return calls;
}

NumericType dtype_from_string(const std::string& s, std::size_t line_no) {
  if (s == "int") return NumericType::integer;
  if (s == "fixed") return NumericType::fixed_point;
  if (s == "float") return NumericType::floating_point;
  parse_fail(line_no, "unknown dtype: " + s);
}

std::string dtype_to_string(NumericType t) {
  switch (t) {
    case NumericType::integer: return "int";
    case NumericType::fixed_point: return "fixed";
    case NumericType::floating_point: return "float";
  }
  return "int";
}

}  // namespace

MiniKernel parse_minikernel(const std::string& text) {
  MiniKernel mk;
  bool have_kernel = false;
  // Loop nesting tracked by indent: stack of (indent, loop list to append to).
  std::vector<std::pair<int, std::vector<LoopRecord>*>> stack;

  const auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string raw = lines[i];
    if (auto hash = raw.find('#'); hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    int indent = 0;
    while (static_cast<std::size_t>(indent) < raw.size() && raw[static_cast<std::size_t>(indent)] == ' ')
      ++indent;

    std::vector<std::string> words;
    for (auto& w : split(line, ' '))
      if (!trim(w).empty()) words.push_back(trim(w));
    const std::string& head = words[0];

    if (head == "kernel") {
      if (have_kernel) parse_fail(line_no, "duplicate kernel line");
      if (words.size() < 2) parse_fail(line_no, "kernel needs a name");
      mk.name = words[1];
      for (const auto& [k, v] :
           parse_attrs({words.begin() + 2, words.end()}, line_no)) {
        if (k == "recursive") mk.recursive = v == "1";
        else parse_fail(line_no, "unknown kernel attribute: " + k);
      }
      have_kernel = true;
      stack = {{-1, &mk.loops}};
      continue;
    }
    if (!have_kernel) parse_fail(line_no, "expected 'kernel <name>' first");

    if (head == "array") {
      if (words.size() < 2) parse_fail(line_no, "array needs an id");
      ArrayRecord a;
      a.id = words[1];
      bool have_size = false;
      for (const auto& [k, v] : parse_attrs({words.begin() + 2, words.end()}, line_no)) {
        if (k == "size") { a.size = parse_uint(v, line_no, "size"); have_size = true; }
        else if (k == "partition") a.partition_factor = parse_uint(v, line_no, "partition");
        else parse_fail(line_no, "unknown array attribute: " + k);
      }
      if (!have_size || a.size == 0) parse_fail(line_no, "array needs size>=1");
      if (a.partition_factor == 0) parse_fail(line_no, "partition factor must be >=1");
      mk.arrays.push_back(std::move(a));
      continue;
    }

    if (head == "loop") {
      if (words.size() < 2) parse_fail(line_no, "loop needs an id");
      LoopRecord l;
      l.id = words[1];
      bool have_trips = false;
      for (const auto& [k, v] : parse_attrs({words.begin() + 2, words.end()}, line_no)) {
        if (k == "trips") { l.trip_count = parse_uint(v, line_no, "trips"); have_trips = true; }
        else if (k == "body") l.body_op_latency = parse_uint(v, line_no, "body");
        else if (k == "carried") l.carried_dependence = v == "1";
        else if (k == "dtype") l.dtype = dtype_from_string(v, line_no);
        else if (k == "calls") l.calls = parse_list(v);
        else if (k == "accesses") l.accesses = parse_list(v);
        else parse_fail(line_no, "unknown loop attribute: " + k);
      }
      if (!have_trips || l.trip_count == 0) parse_fail(line_no, "loop needs trips>=1");
      if (l.body_op_latency == 0) parse_fail(line_no, "loop body latency must be >=1");
      for (const auto& c : l.calls)
        if (!known_calls().count(c)) parse_fail(line_no, "unknown call: " + c);

      while (stack.size() > 1 && indent <= stack.back().first) stack.pop_back();
      stack.back().second->push_back(std::move(l));
      stack.push_back({indent, &stack.back().second->back().children});
      continue;
    }

    if (head == "pipeline" || head == "unroll" || head == "array_partition") {
      if (words.size() != 3) parse_fail(line_no, head + " needs <site> and one attribute");
      Directive d;
      d.site_id = words[1];
      auto attrs = parse_attrs({words.begin() + 2, words.end()}, line_no);
      const std::string expect = head == "pipeline" ? "ii" : "factor";
      if (attrs[0].key != expect)
        parse_fail(line_no, head + " expects " + expect + "=<n>");
      d.value = parse_uint(attrs[0].value, line_no, expect.c_str());
      if (d.value == 0) parse_fail(line_no, expect + " must be >=1");
      d.kind = head == "pipeline" ? DirectiveKind::pipeline
               : head == "unroll" ? DirectiveKind::unroll
                                  : DirectiveKind::array_partition;
      // Later directive for the same (kind, site) replaces the earlier one.
      auto same = std::find_if(mk.directives.begin(), mk.directives.end(), [&](const Directive& e) {
        return e.kind == d.kind && e.site_id == d.site_id;
      });
      if (same != mk.directives.end()) *same = d;
      else mk.directives.push_back(d);
      continue;
    }

    parse_fail(line_no, "unknown statement: " + head);
  }

  if (!have_kernel) throw ParseError("empty kernel description");
  validate_minikernel(mk);
  return mk;
}

namespace {

void collect_loop_ids(const std::vector<LoopRecord>& loops, std::vector<std::string>& out) {
  for (const auto& l : loops) {
    out.push_back(l.id);
    collect_loop_ids(l.children, out);
  }
}

const LoopRecord* find_loop_in(const std::vector<LoopRecord>& loops, const std::string& id) {
  for (const auto& l : loops) {
    if (l.id == id) return &l;
    if (const auto* hit = find_loop_in(l.children, id)) return hit;
  }
  return nullptr;
}

}  // namespace

std::vector<std::string> loop_ids(const MiniKernel& mk) {
  std::vector<std::string> out;
  collect_loop_ids(mk.loops, out);
  return out;
}

const LoopRecord* find_loop(const MiniKernel& mk, const std::string& id) {
  return find_loop_in(mk.loops, id);
}

bool has_array(const MiniKernel& mk, const std::string& id) {
  return std::any_of(mk.arrays.begin(), mk.arrays.end(),
                     [&](const ArrayRecord& a) { return a.id == id; });
}

namespace {

void collect_innermost(const std::vector<LoopRecord>& loops, std::vector<std::string>& out) {
  for (const auto& l : loops) {
    if (l.children.empty()) out.push_back(l.id);
    else collect_innermost(l.children, out);
  }
}

}  // namespace

std::vector<std::string> innermost_loop_ids(const MiniKernel& mk) {
  std::vector<std::string> out;
  collect_innermost(mk.loops, out);
  return out;
}

void validate_minikernel(const MiniKernel& mk) {
  if (trim(mk.name).empty()) throw ParseError("kernel name is empty");
  std::set<std::string> ids;
  for (const auto& id : loop_ids(mk))
    if (!ids.insert(id).second) throw ParseError("duplicate loop id: " + id);
  for (const auto& a : mk.arrays) {
    if (a.size == 0 || a.partition_factor == 0) throw ParseError("array " + a.id + ": zero field");
    if (!ids.insert(a.id).second) throw ParseError("duplicate array id: " + a.id);
  }
  for (const auto& d : mk.directives) {
    const bool is_array = d.kind == DirectiveKind::array_partition;
    if (is_array ? !has_array(mk, d.site_id) : find_loop(mk, d.site_id) == nullptr)
      throw ParseError("directive references unknown site: " + d.site_id);
    if (d.value == 0) throw ParseError("directive value must be >=1");
  }
  // Loops may only access declared arrays.
  std::function<void(const LoopRecord&)> check = [&](const LoopRecord& l) {
    for (const auto& a : l.accesses)
      if (!has_array(mk, a)) throw ParseError("loop " + l.id + " accesses unknown array: " + a);
    for (const auto& c : l.children) check(c);
  };
  for (const auto& l : mk.loops) check(l);
}

namespace {

void serialize_loop(std::ostringstream& out, const LoopRecord& l, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "loop " << l.id
      << " trips=" << l.trip_count << " body=" << l.body_op_latency;
  if (l.carried_dependence) out << " carried=1";
  if (l.dtype != NumericType::integer) out << " dtype=" << dtype_to_string(l.dtype);
  if (!l.calls.empty()) {
    auto sorted = l.calls;
    std::sort(sorted.begin(), sorted.end());
    out << " calls=";
    for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? "," : "") << sorted[i];
  }
  if (!l.accesses.empty()) {
    auto sorted = l.accesses;
    std::sort(sorted.begin(), sorted.end());
    out << " accesses=";
    for (std::size_t i = 0; i < sorted.size(); ++i) out << (i ? "," : "") << sorted[i];
  }
  out << "\n";
  for (const auto& c : l.children) serialize_loop(out, c, depth + 1);
}

int directive_kind_rank(DirectiveKind k) {
  switch (k) {
    case DirectiveKind::pipeline: return 0;
    case DirectiveKind::unroll: return 1;
    case DirectiveKind::array_partition: return 2;
  }
  return 3;
}

}  // namespace

std::string serialize_minikernel(const MiniKernel& mk) {
  std::ostringstream out;
  out << "kernel " << mk.name;
  if (mk.recursive) out << " recursive=1";
  out << "\n";

  auto arrays = mk.arrays;
  std::sort(arrays.begin(), arrays.end(),
            [](const ArrayRecord& a, const ArrayRecord& b) { return a.id < b.id; });
  for (const auto& a : arrays)
    out << "array " << a.id << " size=" << a.size << " partition=" << a.partition_factor
        << "\n";

  for (const auto& l : mk.loops) serialize_loop(out, l, 1);

  auto dirs = mk.directives;
  std::sort(dirs.begin(), dirs.end(), [](const Directive& a, const Directive& b) {
    const int ra = directive_kind_rank(a.kind);
    const int rb = directive_kind_rank(b.kind);
    if (ra != rb) return ra < rb;
    if (a.site_id != b.site_id) return a.site_id < b.site_id;
    return a.value < b.value;
  });
  for (const auto& d : dirs) {
    switch (d.kind) {
      case DirectiveKind::pipeline: out << "pipeline " << d.site_id << " ii=" << d.value; break;
      case DirectiveKind::unroll: out << "unroll " << d.site_id << " factor=" << d.value; break;
      case DirectiveKind::array_partition:
        out << "array_partition " << d.site_id << " factor=" << d.value;
        break;
    }
    out << "\n";
  }
  return out.str();
}

KernelSource minikernel_to_source(const MiniKernel& mk) {
  return make_kernel_source({{"kernel.mk", serialize_minikernel(mk)}}, mk.name,
                            LanguageDialect::hls_cpp);
}

// ---- cost model -------------------------------------------------------------

namespace {

struct DirectiveView {
  std::map<std::string, std::uint64_t> pipeline_ii;
  std::map<std::string, std::uint64_t> unroll_factor;
  std::map<std::string, std::uint64_t> partition_factor;  // overrides array base
};

DirectiveView view_of(const MiniKernel& mk) {
  DirectiveView v;
  for (const auto& d : mk.directives) {
    switch (d.kind) {
      case DirectiveKind::pipeline: v.pipeline_ii[d.site_id] = d.value; break;
      case DirectiveKind::unroll: v.unroll_factor[d.site_id] = d.value; break;
      case DirectiveKind::array_partition: v.partition_factor[d.site_id] = d.value; break;
    }
  }
  return v;
}

std::uint64_t array_partition_of(const MiniKernel& mk, const DirectiveView& v,
                                 const std::string& array_id) {
  if (auto it = v.partition_factor.find(array_id); it != v.partition_factor.end())
    return it->second;
  for (const auto& a : mk.arrays)
    if (a.id == array_id) return a.partition_factor;
  return 1;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Per-op and per-call hardware costs. Floating point is the expensive case
// the datatype adaptation removes; std math calls cost far more than their
// hls intrinsic replacements.
struct OpCosts {
  std::uint64_t latency_mult;
  std::uint64_t dsp_per_op;
};

OpCosts op_costs(NumericType t) {
  switch (t) {
    case NumericType::floating_point: return {4, 5};
    case NumericType::fixed_point: return {1, 1};
    case NumericType::integer: return {1, 1};
  }
  return {1, 1};
}

struct CallCost {
  std::uint64_t latency;
  std::uint64_t dsp;
  std::uint64_t lut;
};

CallCost call_cost(const std::string& name) {
  if (starts_with(name, "hls_")) return {4, 2, 400};
  return {16, 8, 2000};  // std_*
}

std::uint64_t effective_body_latency(const LoopRecord& l) {
  std::uint64_t lat = l.body_op_latency * op_costs(l.dtype).latency_mult;
  for (const auto& c : l.calls) lat += call_cost(c).latency;
  return lat;
}

struct LoopEval {
  std::uint64_t latency = 0;
};

LoopEval eval_loop(const MiniKernel& mk, const DirectiveView& v, const LoopRecord& l,
                   std::uint64_t replication, CostBreakdown& acc) {
  std::uint64_t child_latency = 0;

  const std::uint64_t requested_unroll =
      v.unroll_factor.count(l.id) ? v.unroll_factor.at(l.id) : 1;

  // Children hardware is replicated by this loop's requested unroll.
  for (const auto& c : l.children)
    child_latency += eval_loop(mk, v, c, replication * requested_unroll, acc).latency;

  const std::uint64_t body = effective_body_latency(l);
  const std::uint64_t iter_latency = body + child_latency;

  // Effective parallelism: trips, then memory ports, then dependences.
  std::uint64_t unroll_eff = requested_unroll;
  if (unroll_eff > l.trip_count) {
    acc.warnings.push_back({"unroll_violation",
                            "loop " + l.id + ": unroll factor exceeds trip count", l.id});
    unroll_eff = l.trip_count;
  }
  if (unroll_eff > 1 && !l.accesses.empty()) {
    std::uint64_t min_ports = UINT64_MAX;
    for (const auto& a : l.accesses)
      min_ports = std::min(min_ports, array_partition_of(mk, v, a));
    if (unroll_eff > min_ports) {
      acc.warnings.push_back(
          {"resource_pressure",
           "loop " + l.id + ": memory ports limit parallelism to " + std::to_string(min_ports),
           l.id});
      unroll_eff = std::max<std::uint64_t>(1, min_ports);
    }
  }
  if (unroll_eff > 1 && l.carried_dependence) {
    acc.warnings.push_back({"dependence_conflict",
                            "loop " + l.id + ": carried dependence prevents unrolling", l.id});
    unroll_eff = 1;
  }

  const std::uint64_t trips_eff = ceil_div(l.trip_count, unroll_eff);

  LoopEval ev;
  const bool pipelined = v.pipeline_ii.count(l.id) > 0;
  if (pipelined) {
    const std::uint64_t requested_ii = v.pipeline_ii.at(l.id);
    std::uint64_t feasible_ii = requested_ii;
    if (l.carried_dependence) feasible_ii = std::max(feasible_ii, body);
    if (child_latency > 0) feasible_ii = std::max(feasible_ii, child_latency);
    if (feasible_ii > requested_ii) {
      acc.warnings.push_back({"ii_breach",
                              "loop " + l.id + ": achieved II " + std::to_string(feasible_ii) +
                                  " exceeds requested II " + std::to_string(requested_ii),
                              l.id});
      acc.timing_met = false;
    }
    ev.latency = iter_latency + feasible_ii * (trips_eff - 1);
  } else {
    ev.latency = trips_eff * iter_latency;
  }

  // Hardware cost: compute units replicate with the requested factor even
  // when starved ports keep them idle.
  const std::uint64_t units = replication * requested_unroll;
  const OpCosts oc = op_costs(l.dtype);
  acc.dsp += units * l.body_op_latency * oc.dsp_per_op;
  acc.lut += units * l.body_op_latency * 64;
  acc.ff += units * l.body_op_latency * 32;
  for (const auto& c : l.calls) {
    const CallCost cc = call_cost(c);
    acc.dsp += units * cc.dsp;
    acc.lut += units * cc.lut;
    acc.ff += units * cc.lut / 2;
  }
  if (pipelined) {
    acc.ff += units * iter_latency * 8;
    acc.lut += units * iter_latency * 4;
  }
  return ev;
}

}  // namespace

CostBreakdown cost_model_run(const MiniKernel& mk) {
  CostBreakdown out;
  const DirectiveView v = view_of(mk);

  std::uint64_t total = 0;
  for (const auto& l : mk.loops) total += eval_loop(mk, v, l, 1, out).latency;
  out.latency_cycles = std::max<std::uint64_t>(1, total);

  for (const auto& a : mk.arrays) {
    const std::uint64_t p = array_partition_of(mk, v, a.id);
    out.bram += p * std::max<std::uint64_t>(1, ceil_div(a.size, p * 1024));
  }
  // Fixed control overhead.
  out.lut += 1000;
  out.ff += 500;
  return out;
}

}  // namespace hlsforge
