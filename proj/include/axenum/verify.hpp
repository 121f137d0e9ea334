#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "axenum/brute_force.hpp"
#include "axenum/construction.hpp"

namespace axenum {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> notes;  // failure notes; empty on a clean check
  std::vector<std::string> info;   // informational, never fails the check
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const CheckResult& c : checks)
      if (!c.passed) return false;
    return true;
  }

  const CheckResult* find(const std::string& name) const {
    for (const CheckResult& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

// Indexed view of a trace, shared by the individual checks.
struct TraceIndex {
  const Trace& trace;
  const FixtureSet& fixtures;
  std::map<NodeAddress, std::vector<const StageRecord*>> executions;
  std::map<NodeAddress, std::pair<nat, const GuessRecord*>> guesses;
  std::map<NodeAddress, std::pair<nat, const ActivationRecord*>> activations;
  std::optional<AxiomStore> store;  // rebuilt from the records
  std::string store_error;

  explicit TraceIndex(const Trace& t, const FixtureSet& f) : trace(t), fixtures(f) {
    for (const StageRecord& r : t.records) {
      executions[r.node].push_back(&r);
      for (const GuessRecord& g : r.defined)
        guesses.emplace(g.node, std::make_pair(r.t, &g));
      if (r.activated) activations.emplace(r.node, std::make_pair(r.t, &*r.activated));
    }
    try {
      AxiomStore s;
      for (const StageRecord& r : t.records)
        for (const AxiomRecord& a : r.axioms) s.append(a.axiom, r.t);
      store = std::move(s);
    } catch (const std::exception& e) {
      store_error = e.what();
    }
  }

  bool activated_by(const NodeAddress& node, nat t) const {
    auto it = activations.find(node);
    return it != activations.end() && it->second.first <= t;
  }

  const GuessRecord* guess(const NodeAddress& node) const {
    auto it = guesses.find(node);
    return it == guesses.end() ? nullptr : it->second.second;
  }

  SetDescription snapshot(const NodeAddress& node, nat t) const {
    const GuessRecord* g = guess(node);
    if (!g) throw std::logic_error("no guesses on record for the node");
    nat base = assign_requirement(node.size()).base_column;
    return yields_over(*store, t, g->guess_columns, g->restraint, base,
                       trace.header.horizon);
  }
};

inline std::string describe_node(const NodeAddress& node) {
  std::string out = "[";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(node[i]);
  }
  return out + "]";
}

inline std::string at_stage(nat t) { return " at stage " + std::to_string(t); }

using Check = std::function<void(const TraceIndex&, CheckResult&)>;

// Stage numbers contiguous from one, execution counters contiguous per node,
// and the node sequence exactly what the sweep scheduler dictates given the
// recorded outcomes.
inline void check_records(const TraceIndex& ix, CheckResult& out) {
  const auto& records = ix.trace.records;
  if (records.size() != ix.trace.header.stages)
    out.notes.push_back("record count differs from the header stage count");
  SchedulerState sim;
  std::map<NodeAddress, nat> execs;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StageRecord& r = records[i];
    if (r.t != i + 1) {
      out.notes.push_back("stage numbers break" + at_stage(r.t));
      return;
    }
    if (r.node != sim.current()) {
      out.notes.push_back("node differs from the scheduled one" + at_stage(r.t));
      return;
    }
    if (r.requirement != assign_requirement(r.node.size())) {
      out.notes.push_back("requirement mislabeled" + at_stage(r.t));
      return;
    }
    if (r.exec != ++execs[r.node]) {
      out.notes.push_back("execution counter breaks" + at_stage(r.t));
      return;
    }
    sim.record_outcome(r.node, r.outcome);
  }
}

// Re-runs the construction on the same fixtures and demands byte equality.
inline void check_replay(const TraceIndex& ix, CheckResult& out) {
  RunConfig config;
  config.fixtures_label = ix.trace.header.fixtures;
  config.stages = ix.trace.header.stages;
  config.horizon = ix.trace.header.horizon;
  config.seed = ix.trace.header.seed;
  RunResult fresh = run_construction(config, ix.fixtures);
  std::string a = serialize_trace(ix.trace);
  std::string b = serialize_trace(fresh.trace);
  if (a == b) return;
  std::istringstream sa(a), sb(b);
  std::string la, lb;
  nat line = 0;
  while (std::getline(sa, la) && std::getline(sb, lb)) {
    ++line;
    if (la != lb) break;
  }
  out.notes.push_back("replay diverges on line " + std::to_string(line));
}

// The summary store must be exactly the stage records' axioms in order, and
// the summary yield must be what that store yields.
inline void check_store(const TraceIndex& ix, CheckResult& out) {
  if (!ix.store) {
    out.notes.push_back("store rebuild failed: " + ix.store_error);
    return;
  }
  const auto& entries = ix.store->entries();
  const auto& listed = ix.trace.summary.store;
  if (entries.size() != listed.size()) {
    out.notes.push_back("summary store size differs from the records");
    return;
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!(entries[i].axiom == listed[i])) {
      out.notes.push_back("summary store differs at index " + std::to_string(i));
      return;
    }
  SetDescription yield =
      yields(*ix.store, ix.trace.header.stages, ix.trace.header.horizon);
  if (!(yield == ix.trace.summary.yield))
    out.notes.push_back("summary yield differs from the store's yield");
}

// Guesses are defined exactly once per node, before or at the node's first
// execution, and never change afterwards.
inline void check_write_once(const TraceIndex& ix, CheckResult& out) {
  std::map<NodeAddress, nat> seen;
  for (const StageRecord& r : ix.trace.records)
    for (const GuessRecord& g : r.defined)
      if (++seen[g.node] > 1)
        out.notes.push_back("guesses redefined for " + describe_node(g.node) +
                            at_stage(r.t));
  for (const auto& [node, recs] : ix.executions) {
    auto it = ix.guesses.find(node);
    if (it == ix.guesses.end())
      out.notes.push_back("node " + describe_node(node) + " executed undefined");
    else if (it->second.first > recs.front()->t)
      out.notes.push_back("node " + describe_node(node) +
                          " executed before its guesses were defined");
  }
}

// Every enumerated axiom carries its node's restraint inside the condition.
inline void check_constraint_one(const TraceIndex& ix, CheckResult& out) {
  for (const StageRecord& r : ix.trace.records)
    for (const AxiomRecord& ar : r.axioms) {
      const GuessRecord* g = ix.guess(r.node);
      if (!g) {
        out.notes.push_back("axiom from an undefined node" + at_stage(r.t));
        continue;
      }
      for (auto [p, v] : g->restraint.entries()) {
        if (column_of(p) >= ar.axiom.level) continue;
        if (!ar.axiom.condition.defined(p) ||
            ar.axiom.condition.value(p) != (v != 0)) {
          out.notes.push_back("condition drops the restraint of " +
                              describe_node(r.node) + at_stage(r.t));
          break;
        }
      }
    }
}

// Axiom levels and target columns stay inside the executing node's columns.
inline void check_columns(const TraceIndex& ix, CheckResult& out) {
  for (const StageRecord& r : ix.trace.records)
    for (const AxiomRecord& ar : r.axioms) {
      nat base = r.requirement.base_column;
      bool diagonal = r.requirement.kind == RequirementKind::diagonal;
      bool level_ok = diagonal ? (ar.axiom.level == base || ar.axiom.level == base + 1)
                               : ar.axiom.level == base;
      if (!level_ok || column_of(ar.axiom.target) != ar.axiom.level) {
        out.notes.push_back("axiom leaves the columns of " + describe_node(r.node) +
                            at_stage(r.t));
        return;
      }
    }
}

// Spot-checks the incremental evaluation against exhaustive satisfaction
// search on every store prefix small enough to enumerate.
inline void check_oracle_spot(const TraceIndex& ix, CheckResult& out) {
  if (!ix.store) {
    out.notes.push_back("store rebuild failed: " + ix.store_error);
    return;
  }
  constexpr nat kSpan = 26;
  constexpr std::size_t kMaxFree = 12;
  nat checked = 0;
  for (const StageRecord& r : ix.trace.records) {
    if (r.axioms.empty()) continue;
    nat mentioned = 0;
    std::size_t targets = 0;
    bool fits = true;
    ix.store->for_each_upto(r.t, [&](const Axiom& a) {
      mentioned = std::max({mentioned, a.level, a.target});
      if (!a.condition.empty())
        mentioned = std::max(mentioned, a.condition.length() - 1);
      ++targets;
    });
    if (mentioned >= kSpan || targets > kMaxFree) fits = false;
    if (!fits) continue;
    SetDescription slow = brute_force_yields(*ix.store, r.t, {}, {}, 0, kSpan);
    SetDescription fast = yields(*ix.store, r.t, kSpan);
    for (nat p = 0; p < kSpan; ++p)
      if (slow.contains(p) != fast.contains(p)) {
        out.notes.push_back("evaluator disagrees with exhaustive search" +
                            at_stage(r.t));
        return;
      }
    ++checked;
  }
  out.info.push_back(std::to_string(checked) + " snapshots cross-checked");
}

// Diagonal life cycle: silent until activation, then every execution compares
// the limit approximation against the cached outputs, switches sides exactly
// at eventful stages, steps the marker only there, and reports the outcome
// the comparison dictates.  Cover life cycle: waits, acts once on the least
// eligible element, then holds.
inline void check_eventful(const TraceIndex& ix, CheckResult& out) {
  for (const auto& [node, recs] : ix.executions) {
    RequirementAssignment req = assign_requirement(node.size());
    nat base = req.base_column;
    const GuessRecord* g = ix.guess(node);
    if (!g) continue;
    if (req.kind == RequirementKind::diagonal) {
      auto act_it = ix.activations.find(node);
      nat act_stage = act_it == ix.activations.end() ? 0 : act_it->second.first;
      const ActivationRecord* act =
          act_it == ix.activations.end() ? nullptr : act_it->second.second;
      std::optional<bool> val0, val1;
      if (act) {
        const TableFunctional* phi = ix.fixtures.functional(req.i);
        if (!phi) {
          out.notes.push_back("activated node " + describe_node(node) +
                              " has no functional");
          continue;
        }
        val0 = eval_functional(*phi, act->side0, act->input, act->control);
        val1 = eval_functional(*phi, act->side1, act->input, kNoBudget);
        if (!val0 || !val1 || *val0 == *val1) {
          out.notes.push_back("cached outputs of " + describe_node(node) +
                              " do not split");
          continue;
        }
      }
      nat marker = act ? act->marker0 : 0;
      nat eventful_count = 0;
      std::optional<nat> last_side;
      for (const StageRecord* r : recs) {
        bool before = !act || r->t < act_stage;
        bool at_activation = act && r->t == act_stage;
        if (before || at_activation) {
          if (r->outcome != 0 || !r->axioms.empty() || r->side || r->eventful) {
            out.notes.push_back(describe_node(node) + " moves before activation" +
                                at_stage(r->t));
            break;
          }
          continue;
        }
        if (!r->side || !r->eventful || !r->marker) {
          out.notes.push_back(describe_node(node) + " skips comparison fields" +
                              at_stage(r->t));
          break;
        }
        bool approx = delta2_value(ix.fixtures.delta2, req.e, act->input, r->t);
        nat side = approx == *val0 ? 0 : 1;
        bool eventful = last_side.has_value() && *last_side != side;
        if (*r->side != side || *r->eventful != eventful || *r->marker != marker) {
          out.notes.push_back(describe_node(node) + " misreports a comparison" +
                              at_stage(r->t));
          break;
        }
        if (eventful) {
          if (r->outcome != 1 || r->axioms.size() != 1 ||
              r->axioms[0].axiom.target != pair_code(base, marker) ||
              r->axioms[0].axiom.level != base) {
            out.notes.push_back(describe_node(node) + " mishandles a side switch" +
                                at_stage(r->t));
            break;
          }
          marker += 1;
          eventful_count += 1;
        } else {
          if (r->outcome != eventful_count + 2 || r->axioms.size() > 2) {
            out.notes.push_back(describe_node(node) + " misreports its outcome" +
                                at_stage(r->t));
            break;
          }
          bool bad = false;
          for (const AxiomRecord& ar : r->axioms) {
            bool is_flag = ar.axiom.target == act->flag;
            bool is_control = ar.axiom.target == act->control;
            nat hold = pair_code(base, marker);
            if ((!is_flag && !is_control) || ar.axiom.level != base + 1 ||
                ar.axiom.condition.value(hold) != std::optional<bool>(false))
              bad = true;
            if (is_control && approx != *val1) bad = true;
          }
          if (bad) {
            out.notes.push_back(describe_node(node) + " sends a stray promise" +
                                at_stage(r->t));
            break;
          }
        }
        last_side = side;
      }
    } else {
      bool acted = false;
      for (const StageRecord* r : recs) {
        std::vector<nat> members = ce_members(ix.fixtures.ce, req.e, r->exec);
        std::optional<nat> least;
        for (nat y : members) {
          if (y < r->exec || column_of(y) != base || g->restraint.defined(y))
            continue;
          least = y;
          break;
        }
        if (!acted && least) {
          if (!r->acted_element || *r->acted_element != *least ||
              r->outcome != 1 || r->axioms.size() != 1 ||
              r->axioms[0].axiom.target != *least) {
            out.notes.push_back(describe_node(node) + " mishandles its element" +
                                at_stage(r->t));
            break;
          }
          acted = true;
          continue;
        }
        nat want = acted ? 1 : 0;
        if (r->outcome != want || !r->axioms.empty() ||
            r->acted_element.has_value()) {
          out.notes.push_back(describe_node(node) + " misreports waiting" +
                              at_stage(r->t));
          break;
        }
      }
    }
  }
}

// Every recorded activation satisfies the literal split-pair conditions
// against the store as it stood at that stage, and the flag and marker were
// allocated above the recorded floor in the right columns.
inline void check_activation(const TraceIndex& ix, CheckResult& out) {
  if (!ix.store) {
    out.notes.push_back("store rebuild failed: " + ix.store_error);
    return;
  }
  for (const auto& [node, entry] : ix.activations) {
    auto [t, act] = entry;
    RequirementAssignment req = assign_requirement(node.size());
    const GuessRecord* g = ix.guess(node);
    const TableFunctional* phi = ix.fixtures.functional(req.i);
    if (!g || !phi) {
      out.notes.push_back("activation lacks guesses or a functional" + at_stage(t));
      continue;
    }
    ActivationWitness w;
    w.side0 = act->side0;
    w.side1 = act->side1;
    w.input = act->input;
    w.control = act->control;
    std::string why;
    if (!activation_conditions_hold(*phi, *ix.store, t, g->guess_columns,
                                    g->restraint, req.base_column, w,
                                    ix.trace.header.horizon, &why)) {
      out.notes.push_back("activation of " + describe_node(node) + at_stage(t) +
                          ": " + why);
      continue;
    }
    if (column_of(act->flag) != req.base_column + 1 || act->flag < act->floor_before)
      out.notes.push_back("flag allocated out of place" + at_stage(t));
    if (pair_code(req.base_column, act->marker0) <= act->flag)
      out.notes.push_back("marker allocated out of place" + at_stage(t));
  }
}

// Fresh allocations are strictly increasing across the whole run, and each
// rollback point guards a proper ancestor that was an unactivated diagonal
// node at that moment.  Every axiom carries exactly one rollback point per
// such ancestor, recorded as an absent point of the ancestor's control column.
inline void check_markers(const TraceIndex& ix, CheckResult& out) {
  std::optional<nat> last;
  for (const StageRecord& r : ix.trace.records)
    for (const FreshRecord& f : r.fresh) {
      if (last && f.value <= *last) {
        out.notes.push_back("fresh values fail to increase" + at_stage(r.t));
        return;
      }
      last = f.value;
      if (f.purpose == "rollback") {
        if (!is_ancestor(f.node, r.node) || f.node == r.node) {
          out.notes.push_back("rollback point guards a non-ancestor" + at_stage(r.t));
          return;
        }
        RequirementAssignment anc = assign_requirement(f.node.size());
        if (anc.kind != RequirementKind::diagonal ||
            ix.activated_by(f.node, r.t) ||
            column_of(f.value) != anc.base_column + 1) {
          out.notes.push_back("rollback point misplaced" + at_stage(r.t));
          return;
        }
      }
    }
  for (const StageRecord& r : ix.trace.records)
    for (const AxiomRecord& ar : r.axioms) {
      std::vector<nat> want;
      for (std::size_t d = 0; d < r.node.size(); ++d) {
        NodeAddress prefix(r.node.begin(), r.node.begin() + d);
        RequirementAssignment anc = assign_requirement(d);
        if (anc.kind != RequirementKind::diagonal || ix.activated_by(prefix, r.t))
          continue;
        want.push_back(anc.base_column + 1);
      }
      if (ar.rollback_points.size() != want.size()) {
        out.notes.push_back("rollback guard count differs" + at_stage(r.t));
        return;
      }
      for (std::size_t i = 0; i < want.size(); ++i) {
        nat p = ar.rollback_points[i];
        if (column_of(p) != want[i] ||
            ar.axiom.condition.value(p) != std::optional<bool>(false)) {
          out.notes.push_back("rollback guard missing from a condition" +
                              at_stage(r.t));
          return;
        }
      }
    }
}

// Children defined on the two sides of a side switch pin the flag position to
// opposite values, so at most one of them can guess the final set right.
inline void check_flag(const TraceIndex& ix, CheckResult& out) {
  nat pairs = 0;
  for (const auto& [node, entry] : ix.activations) {
    const ActivationRecord* act = entry.second;
    const GuessRecord* on = nullptr;
    const GuessRecord* off = ix.guess(child_of(node, 1));
    for (nat w = 2; !on; ++w) {
      const GuessRecord* g = ix.guess(child_of(node, w));
      if (!g) break;
      on = g;
    }
    if (!off && !on) continue;
    for (const GuessRecord* g : {off, on}) {
      if (!g) continue;
      bool want = g == on;
      if (!g->restraint.defined(act->flag) ||
          g->restraint.value(act->flag) != want) {
        out.notes.push_back("child " + describe_node(g->node) +
                            " pins the flag the wrong way");
        return;
      }
    }
    if (off && on) ++pairs;
  }
  out.info.push_back(std::to_string(pairs) + " opposing child pairs checked");
}

// At each side switch the cancelled marker enters the yield and takes the
// node's conditional promises with it: flag and control drop out.
inline void check_cancel(const TraceIndex& ix, CheckResult& out) {
  if (!ix.store) {
    out.notes.push_back("store rebuild failed: " + ix.store_error);
    return;
  }
  for (const auto& [node, recs] : ix.executions) {
    auto act_it = ix.activations.find(node);
    if (act_it == ix.activations.end()) continue;
    const ActivationRecord* act = act_it->second.second;
    for (const StageRecord* r : recs) {
      if (!r->eventful || !*r->eventful) continue;
      SetDescription x = ix.snapshot(node, r->t);
      nat cancelled = pair_code(assign_requirement(node.size()).base_column,
                                *r->marker);
      if (!x.contains(cancelled) || x.contains(act->flag) ||
          x.contains(act->control)) {
        out.notes.push_back("side switch fails to retract promises" +
                            at_stage(r->t));
        return;
      }
    }
  }
}

// Guess shape: each defined child matches the outcome that defined it, keeps
// its columns strictly below its own base column, stays consistent with its
// restraint, and extends its parent's guesses.
inline void check_guesses(const TraceIndex& ix, CheckResult& out) {
  for (const StageRecord& r : ix.trace.records)
    for (const GuessRecord& g : r.defined) {
      bool is_root = g.node.empty();
      if (is_root) {
        if (!(r.t == 1 && g.guess_columns == SetDescription{} &&
              g.restraint == FinitePartialFunction{}))
          out.notes.push_back("root guesses not trivial");
        continue;
      }
      if (g.node != child_of(r.node, r.outcome)) {
        out.notes.push_back("guess defined for a node off the outcome" +
                            at_stage(r.t));
        continue;
      }
      nat base = assign_requirement(g.node.size()).base_column;
      for (const auto& [col, desc] : g.guess_columns.columns())
        if (col >= base)
          out.notes.push_back(describe_node(g.node) + " guesses its own columns");
      for (auto [p, v] : g.restraint.entries())
        if (column_of(p) < base && g.guess_columns.contains(p) != (v != 0)) {
          out.notes.push_back(describe_node(g.node) +
                              " contradicts its own restraint");
          break;
        }
      const GuessRecord* parent = ix.guess(r.node);
      if (!parent) continue;
      if (!g.restraint.extends(parent->restraint))
        out.notes.push_back(describe_node(g.node) +
                            " forgets the parent restraint");
      for (const auto& [col, desc] : parent->guess_columns.columns()) {
        const ColumnDescription* mine = g.guess_columns.column(col);
        bool same = mine && *mine == desc;
        bool overwritten = r.requirement.kind == RequirementKind::diagonal &&
                           r.outcome == 1 && col == r.requirement.base_column;
        if (!same && !overwritten) {
          out.notes.push_back(describe_node(g.node) +
                              " rewrites a parent column");
          break;
        }
      }
    }
}

// Reports the tail estimate of the leftmost outcome path.  The stable part
// must name nodes that were actually defined and executed.
inline void check_liminf(const TraceIndex& ix, CheckResult& out) {
  PathEstimate est = liminf_path(ix.trace.records, 6);
  std::string path;
  NodeAddress node;
  for (std::size_t d = 0; d < est.stable_prefix(); ++d) {
    if (!path.empty()) path += ",";
    path += std::to_string(est.entries[d].value);
    if (!ix.executions.count(node)) {
      out.notes.push_back("estimated path visits an unexecuted node");
      return;
    }
    node = child_of(node, est.entries[d].value);
  }
  out.info.push_back("stable outcomes along the path: [" + path + "]");
}

}  // namespace detail

inline const std::vector<std::pair<std::string, detail::Check>>& verify_checks() {
  static const std::vector<std::pair<std::string, detail::Check>> checks = {
      {"records", detail::check_records},
      {"store", detail::check_store},
      {"write-once", detail::check_write_once},
      {"constraint-one", detail::check_constraint_one},
      {"columns", detail::check_columns},
      {"markers", detail::check_markers},
      {"guesses", detail::check_guesses},
      {"eventful", detail::check_eventful},
      {"activation", detail::check_activation},
      {"flag", detail::check_flag},
      {"cancel", detail::check_cancel},
      {"oracle-spot", detail::check_oracle_spot},
      {"liminf", detail::check_liminf},
      {"replay", detail::check_replay},
  };
  return checks;
}

// Runs the named checks (all of them by default) against a loaded trace.
// A check passes when it records no failure note.
inline VerifyReport verify_trace(const Trace& trace, const FixtureSet& fixtures,
                                 const std::vector<std::string>& only = {}) {
  detail::TraceIndex ix(trace, fixtures);
  VerifyReport report;
  for (const auto& [name, fn] : verify_checks()) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), name) == only.end())
      continue;
    CheckResult result;
    result.name = name;
    try {
      fn(ix, result);
      result.passed = result.notes.empty();
    } catch (const std::exception& e) {
      result.notes.push_back(std::string("exception: ") + e.what());
      result.passed = false;
    }
    report.checks.push_back(std::move(result));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Column operators and fault injection
// ---------------------------------------------------------------------------

// The reduction table a finished store defines for one column: membership of
// a target in that column depends only on the finite condition attached to
// it.  Feeding the final yield back through the table must reproduce the
// column exactly.
inline std::vector<std::pair<FinitePartialFunction, nat>> extract_column_operator(
    const AxiomStore& store, nat column) {
  std::vector<std::pair<FinitePartialFunction, nat>> out;
  for (const auto& entry : store.entries())
    if (column_of(entry.axiom.target) == column)
      out.emplace_back(entry.axiom.condition, entry.axiom.target);
  return out;
}

enum class FaultKind {
  strip_condition,
  reorder_records,
  forge_outcome,
  duplicate_axiom,
  rewrite_guess,
};

inline std::string expected_failing_check(FaultKind kind) {
  switch (kind) {
    case FaultKind::strip_condition: return "constraint-one";
    case FaultKind::reorder_records: return "records";
    case FaultKind::forge_outcome: return "replay";
    case FaultKind::duplicate_axiom: return "store";
    case FaultKind::rewrite_guess: return "write-once";
  }
  return "";
}

// Deterministically corrupts a trace in one of five ways, each aimed at a
// specific verifier check.
inline Trace inject_fault(Trace trace, FaultKind kind) {
  auto& records = trace.records;
  switch (kind) {
    case FaultKind::strip_condition:
      // Drop the positive entries of a condition: the part folded in from the
      // node's restraint.  Guards stay, so the restraint audit is what trips.
      for (StageRecord& r : records)
        for (AxiomRecord& ar : r.axioms) {
          FinitePartialFunction kept;
          bool dropped = false;
          for (auto [p, v] : ar.axiom.condition.entries()) {
            if (v)
              dropped = true;
            else
              kept.define(p, false);
          }
          if (dropped) {
            ar.axiom.condition = kept;
            return trace;
          }
        }
      throw std::invalid_argument("no folded restraint entry to strip");
    case FaultKind::reorder_records: {
      if (records.size() < 2)
        throw std::invalid_argument("too few records to reorder");
      std::size_t i = records.size() / 3;
      std::swap(records[i], records[i + 1]);
      return trace;
    }
    case FaultKind::forge_outcome:
      if (records.empty()) throw std::invalid_argument("no records to forge");
      records.back().outcome += 1;
      return trace;
    case FaultKind::duplicate_axiom:
      for (StageRecord& r : records)
        if (!r.axioms.empty()) {
          AxiomRecord copy = r.axioms.front();
          copy.axiom.level += 1;
          r.axioms.push_back(std::move(copy));
          return trace;
        }
      throw std::invalid_argument("no axiom to duplicate");
    case FaultKind::rewrite_guess:
      for (std::size_t i = 0; i < records.size(); ++i)
        for (const GuessRecord& g : records[i].defined)
          if (i + 1 < records.size()) {
            GuessRecord copy = g;
            FinitePartialFunction r;
            if (copy.restraint.empty()) {
              r.define(0, true);
            } else {
              auto [p, v] = *copy.restraint.entries().begin();
              r = copy.restraint;
              r.define(p, v == 0);
            }
            copy.restraint = r;
            records[i + 1].defined.push_back(std::move(copy));
            return trace;
          }
      throw std::invalid_argument("no guess record to rewrite");
  }
  throw std::invalid_argument("unknown fault kind");
}

}  // namespace axenum
