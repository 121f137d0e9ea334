#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "axenum/context.hpp"
#include "axenum/strategies.hpp"
#include "axenum/trace.hpp"

namespace axenum {

struct RunConfig {
  std::string fixtures_label;
  nat stages = 0;
  std::optional<nat> horizon;
  std::optional<nat> seed;
};

struct RunResult {
  Trace trace;
  AxiomStore store;
  SetDescription yield;
};

inline nat resolve_horizon(const RunConfig& config, const FixtureSet& fixtures) {
  if (config.horizon) return *config.horizon;
  return std::max(2 * config.stages, fixtures.max_mentioned() + 1);
}

// Runs the construction for the configured number of stages.  Each stage
// executes the node the scheduler points at, records the outcome, and defines
// the guesses of the child that outcome selects the first time it is
// reported.  Execution is fully deterministic in the fixtures and the stage
// count; two runs with equal inputs produce byte-identical traces.
inline RunResult run_construction(const RunConfig& config, const FixtureSet& fixtures) {
  nat horizon = resolve_horizon(config, fixtures);
  RunContext ctx(fixtures, horizon);

  RunResult out;
  out.trace.header.fixtures = config.fixtures_label;
  out.trace.header.stages = config.stages;
  out.trace.header.horizon = horizon;
  out.trace.header.seed = config.seed;

  for (nat t = 1; t <= config.stages; ++t) {
    StageRecord rec;
    rec.t = t;
    ctx.record = &rec;
    if (t == 1) {
      ctx.create_node({}, {}, {});
      GuessRecord g;
      g.node = {};
      rec.defined.push_back(g);
    }
    ctx.fresh.mention(t);
    NodeAddress node = ctx.sched.current();
    NodeState& st = ctx.state(node);
    st.exec_count += 1;
    rec.node = node;
    rec.requirement = st.requirement;
    rec.exec = st.exec_count;
    nat outcome = st.requirement.kind == RequirementKind::diagonal
                      ? r_step(ctx, st)
                      : n_step(ctx, st);
    rec.outcome = outcome;
    define_child_guesses(ctx, st, outcome);
    ctx.sched.record_outcome(node, outcome);
    ctx.record = nullptr;
    out.trace.records.push_back(std::move(rec));
  }

  out.store = std::move(ctx.store);
  out.yield = yields(out.store, config.stages, horizon);
  for (const auto& entry : out.store.entries())
    out.trace.summary.store.push_back(entry.axiom);
  out.trace.summary.yield = out.yield;
  out.trace.summary.horizon = horizon;
  return out;
}

}  // namespace axenum
