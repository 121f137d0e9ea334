#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "axenum/json_conv.hpp"
#include "axenum/tree.hpp"

// Run traces: JSON Lines, one record per line.  The first line is a header
// echoing the run configuration, then one record per stage, then a summary
// with the final axiom store and yielded set.  Traces are replayable: a
// verifier reruns the construction from the same fixtures and expects the
// same bytes.

namespace axenum {

inline constexpr const char* kTraceFormatVersion = "1";

struct ActivationRecord {
  nat exec = 0;                      // node execution count at activation
  FinitePartialFunction side0;       // string the added-target variant extends
  FinitePartialFunction side1;       // string the unmodified yield extends
  nat input = 0;                     // argument both computations disagree on
  nat control = 0;                   // target whose presence switches the sides
  nat flag = 0;                      // fresh flag position
  nat marker0 = 0;                   // first marker row
  nat floor_before = 0;              // fresh floor before the allocations
};

struct FreshRecord {
  std::string purpose;               // "flag", "marker", "rollback", "bound"
  nat value = 0;                     // position, or plain number for "bound"
  NodeAddress node;                  // owner (for rollback: the guarded node)
};

struct AxiomRecord {
  Axiom axiom;
  std::vector<nat> rollback_points;  // positions added for unactivated guards
};

struct GuessRecord {
  NodeAddress node;
  SetDescription guess_columns;
  FinitePartialFunction restraint;
};

struct StageRecord {
  nat t = 0;
  NodeAddress node;
  RequirementAssignment requirement;
  nat exec = 0;                      // node execution count at this stage
  nat outcome = 0;
  std::optional<bool> eventful;      // diagonal nodes after activation
  std::optional<nat> side;           // disagreeing side at this stage
  std::optional<nat> marker;         // marker row in force this stage
  std::optional<ActivationRecord> activated;
  std::optional<nat> acted_element;  // cover node's enumerated target
  std::vector<AxiomRecord> axioms;
  std::vector<FreshRecord> fresh;
  std::vector<GuessRecord> defined;
};

struct TraceHeader {
  std::string fixtures;
  nat stages = 0;
  nat horizon = 0;
  std::optional<nat> seed;
};

struct TraceSummary {
  std::vector<Axiom> store;
  SetDescription yield;
  nat horizon = 0;
};

struct Trace {
  TraceHeader header;
  std::vector<StageRecord> records;
  TraceSummary summary;
};

inline json to_json(const RequirementAssignment& r) {
  json out{{"family", r.kind == RequirementKind::diagonal ? "R" : "N"},
           {"e", r.e},
           {"base", r.base_column}};
  if (r.kind == RequirementKind::diagonal) out["i"] = r.i;
  return out;
}

inline RequirementAssignment requirement_from_json(const json& j) {
  RequirementAssignment out;
  out.kind = j.at("family").get<std::string>() == "R" ? RequirementKind::diagonal
                                                      : RequirementKind::cover;
  out.e = j.at("e").get<nat>();
  if (j.contains("i")) out.i = j.at("i").get<nat>();
  out.base_column = j.at("base").get<nat>();
  return out;
}

inline json to_json(const StageRecord& r) {
  json out;
  out["type"] = "stage";
  out["t"] = r.t;
  out["node"] = r.node;
  out["req"] = to_json(r.requirement);
  out["exec"] = r.exec;
  out["outcome"] = r.outcome;
  if (r.eventful) out["eventful"] = *r.eventful ? 1 : 0;
  if (r.side) out["side"] = *r.side;
  if (r.marker) out["marker"] = *r.marker;
  if (r.activated) {
    const ActivationRecord& a = *r.activated;
    out["activated"] = json{{"exec", a.exec},
                            {"side0", to_json(a.side0)},
                            {"side1", to_json(a.side1)},
                            {"input", a.input},
                            {"control", a.control},
                            {"flag", a.flag},
                            {"marker0", a.marker0},
                            {"floor0", a.floor_before}};
  }
  if (r.acted_element) out["acted"] = *r.acted_element;
  if (!r.axioms.empty()) {
    json ax = json::array();
    for (const AxiomRecord& a : r.axioms) {
      json aj = to_json(a.axiom);
      aj["rollback"] = a.rollback_points;
      ax.push_back(std::move(aj));
    }
    out["axioms"] = std::move(ax);
  }
  if (!r.fresh.empty()) {
    json fr = json::array();
    for (const FreshRecord& f : r.fresh)
      fr.push_back(json{{"purpose", f.purpose}, {"value", f.value}, {"node", f.node}});
    out["fresh"] = std::move(fr);
  }
  if (!r.defined.empty()) {
    json df = json::array();
    for (const GuessRecord& g : r.defined)
      df.push_back(json{{"node", g.node},
                        {"columns", to_json(g.guess_columns)},
                        {"restraint", to_json(g.restraint)}});
    out["defined"] = std::move(df);
  }
  return out;
}

inline StageRecord stage_from_json(const json& j) {
  StageRecord r;
  r.t = j.at("t").get<nat>();
  r.node = j.at("node").get<NodeAddress>();
  r.requirement = requirement_from_json(j.at("req"));
  r.exec = j.at("exec").get<nat>();
  r.outcome = j.at("outcome").get<nat>();
  if (j.contains("eventful")) r.eventful = j.at("eventful").get<int>() != 0;
  if (j.contains("side")) r.side = j.at("side").get<nat>();
  if (j.contains("marker")) r.marker = j.at("marker").get<nat>();
  if (j.contains("activated")) {
    const json& a = j.at("activated");
    ActivationRecord rec;
    rec.exec = a.at("exec").get<nat>();
    rec.side0 = function_from_json(a.at("side0"));
    rec.side1 = function_from_json(a.at("side1"));
    rec.input = a.at("input").get<nat>();
    rec.control = a.at("control").get<nat>();
    rec.flag = a.at("flag").get<nat>();
    rec.marker0 = a.at("marker0").get<nat>();
    rec.floor_before = a.at("floor0").get<nat>();
    r.activated = std::move(rec);
  }
  if (j.contains("acted")) r.acted_element = j.at("acted").get<nat>();
  if (j.contains("axioms"))
    for (const auto& aj : j.at("axioms")) {
      AxiomRecord a;
      a.axiom = axiom_from_json(aj);
      for (const auto& p : aj.at("rollback")) a.rollback_points.push_back(p.get<nat>());
      r.axioms.push_back(std::move(a));
    }
  if (j.contains("fresh"))
    for (const auto& fj : j.at("fresh"))
      r.fresh.push_back(FreshRecord{fj.at("purpose").get<std::string>(),
                                    fj.at("value").get<nat>(),
                                    fj.at("node").get<NodeAddress>()});
  if (j.contains("defined"))
    for (const auto& gj : j.at("defined"))
      r.defined.push_back(GuessRecord{gj.at("node").get<NodeAddress>(),
                                      set_from_json(gj.at("columns")),
                                      function_from_json(gj.at("restraint"))});
  return r;
}

inline std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  json header{{"type", "header"},
              {"format", kTraceFormatVersion},
              {"fixtures", trace.header.fixtures},
              {"stages", trace.header.stages},
              {"horizon", trace.header.horizon}};
  if (trace.header.seed) header["seed"] = *trace.header.seed;
  out << header.dump() << '\n';
  for (const StageRecord& r : trace.records) out << to_json(r).dump() << '\n';
  json store = json::array();
  for (const Axiom& a : trace.summary.store) store.push_back(to_json(a));
  json summary{{"type", "summary"},
               {"store", std::move(store)},
               {"yield", to_json(trace.summary.yield)},
               {"horizon", trace.summary.horizon}};
  out << summary.dump() << '\n';
  return out.str();
}

inline Trace parse_trace(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      if (saw_header) throw std::invalid_argument("trace has two headers");
      if (j.at("format").get<std::string>() != kTraceFormatVersion)
        throw std::invalid_argument("unsupported trace format version");
      trace.header.fixtures = j.at("fixtures").get<std::string>();
      trace.header.stages = j.at("stages").get<nat>();
      trace.header.horizon = j.at("horizon").get<nat>();
      if (j.contains("seed")) trace.header.seed = j.at("seed").get<nat>();
      saw_header = true;
    } else if (type == "stage") {
      if (!saw_header) throw std::invalid_argument("stage record before header");
      trace.records.push_back(stage_from_json(j));
    } else if (type == "summary") {
      for (const auto& aj : j.at("store"))
        trace.summary.store.push_back(axiom_from_json(aj));
      trace.summary.yield = set_from_json(j.at("yield"));
      trace.summary.horizon = j.at("horizon").get<nat>();
      saw_summary = true;
    } else {
      throw std::invalid_argument("unknown trace record type: " + type);
    }
  }
  if (!saw_header) throw std::invalid_argument("trace missing header");
  if (!saw_summary) throw std::invalid_argument("trace missing summary");
  return trace;
}

inline void write_trace_file(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out << serialize_trace(trace);
}

inline Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

// Depth-by-depth outcome estimate from the tail of a trace.  For each depth,
// the reported value is the least outcome seen in the last quarter of the
// stages (the finite stand-in for a limit inferior) and the depth counts as
// stable when that window shows a single outcome.  The estimate stops at the
// first depth with no execution in the window.
struct PathEstimate {
  struct Entry {
    nat value = 0;
    bool stable = false;
  };
  std::vector<Entry> entries;

  std::size_t stable_prefix() const {
    std::size_t n = 0;
    while (n < entries.size() && entries[n].stable) ++n;
    return n;
  }
};

inline PathEstimate liminf_path(const std::vector<StageRecord>& records,
                                std::size_t depth_limit) {
  PathEstimate out;
  if (records.empty()) return out;
  nat last = records.back().t;
  nat window_start = last - (last - records.front().t) / 4;
  for (std::size_t d = 0; d < depth_limit; ++d) {
    bool seen = false;
    bool stable = true;
    nat least = 0, first = 0;
    for (const StageRecord& r : records) {
      if (r.t < window_start || r.node.size() != d) continue;
      if (!seen) {
        least = first = r.outcome;
        seen = true;
      } else {
        if (r.outcome != first) stable = false;
        if (r.outcome < least) least = r.outcome;
      }
    }
    if (!seen) break;
    out.entries.push_back(PathEstimate::Entry{least, stable});
  }
  return out;
}

}  // namespace axenum
