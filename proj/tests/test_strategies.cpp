#include <catch2/catch_amalgamated.hpp>

#include "axenum/axenum.hpp"
#include "sample_fixtures.hpp"

using namespace axenum;

namespace {

const StageRecord& record_at(const Trace& trace, nat t) {
  REQUIRE(t >= 1);
  REQUIRE(t <= trace.records.size());
  const StageRecord& r = trace.records[t - 1];
  REQUIRE(r.t == t);
  return r;
}

const GuessRecord& guess_of(const Trace& trace, const NodeAddress& node) {
  for (const StageRecord& r : trace.records)
    for (const GuessRecord& g : r.defined)
      if (g.node == node) return g;
  FAIL("no guess record for the node");
  throw std::logic_error("unreachable");
}

Trace run(const FixtureSet& fx, nat stages) {
  RunConfig config;
  config.fixtures_label = "inline";
  config.stages = stages;
  return run_construction(config, fx).trace;
}

}  // namespace

TEST_CASE("conditioning adds the restraint and one guard per dormant ancestor") {
  FixtureSet fx;
  RunContext ctx(fx, 100);
  ctx.create_node({}, {}, {});
  NodeState& child = ctx.create_node({0}, {}, FinitePartialFunction{{1, 1}});

  ConstraintResult res = apply_constraints(ctx, child, Axiom{2, {}, 7});
  CHECK(res.key == Axiom{2, FinitePartialFunction{{1, 1}}, 7});
  REQUIRE(res.rollback_points.size() == 1);
  nat guard = res.rollback_points[0];
  CHECK(column_of(guard) == 1);
  CHECK(res.axiom.condition.value(guard) == false);
  CHECK(res.axiom.condition.value(1) == true);

  CHECK(enumerate_axiom(ctx, child, Axiom{2, {}, 7}));
  CHECK(ctx.store.size() == 1);
  nat floor_after = ctx.fresh.floor();
  CHECK_FALSE(enumerate_axiom(ctx, child, Axiom{2, {}, 7}));  // deduplicated
  CHECK(ctx.store.size() == 1);
  CHECK(ctx.fresh.floor() == floor_after);  // dedup spends nothing

  ctx.state({}).diag.activated = true;
  ConstraintResult after = apply_constraints(ctx, child, Axiom{2, {}, 12});
  CHECK(after.rollback_points.empty());
  CHECK(after.axiom.condition == FinitePartialFunction{{1, 1}});
}

TEST_CASE("a split pair is found at the first sufficient stage") {
  FixtureSet fx = samples::diagonal_scenario();
  Trace early = run(fx, 10);
  for (const StageRecord& r : early.records) CHECK_FALSE(r.activated.has_value());

  Trace trace = run(fx, 11);
  const StageRecord& r = record_at(trace, 11);
  REQUIRE(r.activated.has_value());
  const ActivationRecord& act = *r.activated;
  CHECK(act.side0 ==
        FinitePartialFunction{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  CHECK(act.side1 ==
        FinitePartialFunction{{0, 0}, {1, 0}, {2, 0}, {3, 1}});
  CHECK(act.input == 0);
  CHECK(act.control == 8);
  CHECK(act.flag == 13);
  CHECK(act.marker0 == 4);
  CHECK(r.outcome == 0);
  CHECK(r.axioms.empty());
}

TEST_CASE("comparisons alternate promises and side switches") {
  Trace trace = run(samples::diagonal_scenario(), 100);

  const StageRecord& first = record_at(trace, 16);
  CHECK(first.outcome == 2);
  CHECK(first.side == 1);
  CHECK(first.eventful == false);  // first comparison has nothing to differ from
  CHECK(first.marker == 4);
  REQUIRE(first.axioms.size() == 2);
  CHECK(first.axioms[0].axiom == Axiom{1, FinitePartialFunction{{14, 0}}, 13});
  CHECK(first.axioms[1].axiom == Axiom{1, FinitePartialFunction{{14, 0}}, 8});

  const StageRecord& switch1 = record_at(trace, 22);
  CHECK(switch1.outcome == 1);
  CHECK(switch1.side == 0);
  CHECK(switch1.eventful == true);
  CHECK(switch1.marker == 4);
  REQUIRE(switch1.axioms.size() == 1);
  CHECK(switch1.axioms[0].axiom == Axiom{0, {}, 14});

  const StageRecord& held = record_at(trace, 29);
  CHECK(held.outcome == 3);
  CHECK(held.marker == 5);
  REQUIRE(held.axioms.size() == 1);  // same side as the cache: no control
  CHECK(held.axioms[0].axiom == Axiom{1, FinitePartialFunction{{20, 0}}, 13});

  const StageRecord& repeat = record_at(trace, 37);
  CHECK(repeat.outcome == 3);
  CHECK(repeat.axioms.empty());  // promises already on the books

  CHECK(record_at(trace, 46).outcome == 1);
  CHECK(record_at(trace, 46).axioms[0].axiom == Axiom{0, {}, 20});

  const StageRecord& back = record_at(trace, 56);
  CHECK(back.outcome == 4);
  REQUIRE(back.axioms.size() == 2);
  CHECK(back.axioms[1].axiom == Axiom{1, FinitePartialFunction{{27, 0}}, 8});

  CHECK(record_at(trace, 67).outcome == 1);
  CHECK(record_at(trace, 79).outcome == 5);
  CHECK(record_at(trace, 92).outcome == 5);
  CHECK(record_at(trace, 92).axioms.empty());
}

TEST_CASE("a cover node waits for an eligible element") {
  Trace trace = run(samples::cover_scenario(), 20);
  const StageRecord& acting = record_at(trace, 17);
  CHECK(acting.node == NodeAddress{0});
  CHECK(acting.exec == 5);
  CHECK(acting.acted_element == 7);  // 3 is offered but sits below the counter
  REQUIRE(acting.axioms.size() == 1);
  const AxiomRecord& ar = acting.axioms[0];
  CHECK(ar.axiom.level == 2);
  CHECK(ar.axiom.target == 7);
  REQUIRE(ar.rollback_points.size() == 1);
  CHECK(column_of(ar.rollback_points[0]) == 1);
  CHECK(ar.axiom.condition ==
        FinitePartialFunction{{ar.rollback_points[0], 0}});

  for (const StageRecord& r : trace.records)
    if (r.node == NodeAddress{0})
      CHECK(r.outcome == (r.t < 17 ? 0 : 1));
}

TEST_CASE("children translate the parent's outcome into guesses") {
  Trace trace = run(samples::diagonal_scenario(), 100);

  const GuessRecord& keep = guess_of(trace, {2});
  CHECK(keep.restraint.length() == 14);
  CHECK(keep.restraint.value(8) == true);    // control present on that side
  CHECK(keep.restraint.value(13) == true);   // flag present
  CHECK(keep.restraint.value(3) == false);
  REQUIRE(keep.guess_columns.column(1) != nullptr);
  CHECK(keep.guess_columns.column(1)->exceptions == std::set<nat>{2, 3});
  CHECK(keep.guess_columns.column(0) == nullptr);

  const GuessRecord& switched = guess_of(trace, {1});
  CHECK(switched.restraint.length() == 14);
  CHECK(switched.restraint.value(3) == true);
  CHECK(switched.restraint.value(13) == false);  // flag retracted on this side
  const ColumnDescription* base = switched.guess_columns.column(0);
  REQUIRE(base != nullptr);
  CHECK(base->default_bit);
  CHECK(base->exceptions == std::set<nat>{0, 1, 2, 3});

  const GuessRecord& settled = guess_of(trace, {5});
  CHECK(settled.restraint.length() == 35);  // up to the marker in force
  CHECK(settled.restraint.value(13) == true);
  CHECK(settled.restraint.value(14) == true);
  CHECK(settled.restraint.value(20) == true);
  CHECK(settled.restraint.value(27) == true);
  CHECK_FALSE(settled.guess_columns.has_cofinite_column());
}

TEST_CASE("a deep cover node inherits restraints and guards") {
  Trace trace = run(samples::layered_scenario(), 10);

  const GuessRecord& mid = guess_of(trace, {0, 1});
  CHECK(mid.restraint == FinitePartialFunction{{3, 1}});
  REQUIRE(mid.guess_columns.column(2) != nullptr);
  CHECK(mid.guess_columns.column(2)->exceptions == std::set<nat>{0});

  const StageRecord& acting = record_at(trace, 10);
  CHECK(acting.node == NodeAddress{0, 1, 0});
  CHECK(acting.acted_element == 99);
  REQUIRE(acting.axioms.size() == 1);
  const AxiomRecord& ar = acting.axioms[0];
  CHECK(ar.axiom.level == 5);
  CHECK(ar.axiom.target == 99);
  CHECK(ar.axiom.condition.value(3) == true);  // the inherited restraint
  REQUIRE(ar.rollback_points.size() == 2);
  CHECK(column_of(ar.rollback_points[0]) == 1);  // root's control column
  CHECK(column_of(ar.rollback_points[1]) == 4);  // the dormant ancestor's
  for (nat p : ar.rollback_points) CHECK(ar.axiom.condition.value(p) == false);
}

TEST_CASE("two runs on the same fixtures are byte identical") {
  FixtureSet fx = samples::layered_scenario();
  RunConfig config;
  config.fixtures_label = "inline";
  config.stages = 60;
  RunResult a = run_construction(config, fx);
  RunResult b = run_construction(config, fx);
  CHECK(serialize_trace(a.trace) == serialize_trace(b.trace));
}
