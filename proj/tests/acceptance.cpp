// Acceptance gate for the construction kit.  Each criterion prints one line;
// the process exits nonzero if any criterion fails or overruns its budget.
//
// Budgets are wall-clock seconds, pinned here.

#include <chrono>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "axenum/axenum.hpp"
#include "sample_fixtures.hpp"

using namespace axenum;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CriterionResult {
  std::string label;
  std::string detail;
  double seconds = 0.0;
  double budget = 0.0;
  std::vector<std::string> problems;
};

struct Check {
  std::vector<std::string>& problems;
  void operator()(bool ok, const std::string& what) const {
    if (!ok) problems.push_back(what);
  }
};

// ---------------------------------------------------------------- criterion 1

CriterionResult random_store_agreement() {
  CriterionResult r;
  r.label = "incremental evaluation matches exhaustive search on random stores";
  r.budget = 60.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  std::mt19937_64 rng(6011);
  const nat horizon = 28;
  const std::vector<nat> target_pool{7, 12, 13, 16, 17, 18, 22, 23, 24, 26};
  const std::vector<nat> condition_pool{0, 1, 2, 3, 4, 5, 6,
                                        8, 9, 10, 7, 12, 13};
  const int instances = 1000;
  int mismatched = 0;
  for (int i = 0; i < instances; ++i) {
    AxiomStore store;
    nat n = 1 + rng() % 7;
    for (nat a = 0; a < n; ++a) {
      nat level = 1 + rng() % 3;
      nat target;
      do {
        target = target_pool[rng() % target_pool.size()];
      } while (column_of(target) < level);
      FinitePartialFunction condition;
      nat entries = rng() % 3;
      for (nat j = 0; j < entries; ++j) {
        nat p = condition_pool[rng() % condition_pool.size()];
        if (column_of(p) >= level || condition.defined(p)) continue;
        condition.define(p, rng() % 2 == 0);
      }
      store.append(Axiom{level, condition, target}, a);
    }
    SetDescription fast = yields(store, n, horizon);
    SetDescription slow = brute_force_yields(store, n, {}, {}, 0, horizon);
    for (nat p = 0; p < horizon; ++p)
      if (fast.contains(p) != slow.contains(p)) {
        ++mismatched;
        break;
      }
  }
  check(mismatched == 0,
        std::to_string(mismatched) + " instances disagreed with the reference");
  r.detail = std::to_string(instances) + " instances";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult guided_agreement() {
  CriterionResult r;
  r.label = "evaluation under guesses and restraints matches exhaustive search";
  r.budget = 30.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  std::mt19937_64 rng(7023);
  const nat horizon = 28;
  const nat bound = 2;
  const std::vector<nat> level2_targets{7, 12, 16, 17, 18, 22, 23, 24};
  const std::vector<nat> level3_targets{16, 17, 22, 23, 24};
  const std::vector<nat> condition_pool{0, 1, 2, 4, 5, 8, 9, 3, 7, 10, 12};
  const std::vector<nat> restraint_pool{3, 7, 11, 16};
  const int instances = 200;
  int mismatched = 0;
  for (int i = 0; i < instances; ++i) {
    SetDescription guess;
    for (nat col = 0; col < bound; ++col) {
      if (rng() % 4 == 0) continue;
      ColumnDescription desc;
      desc.default_bit = rng() % 4 == 0;
      for (nat row = 0; row < 3; ++row)
        if (rng() % 2 == 0) desc.exceptions.insert(row);
      guess.set_column(col, desc);
    }
    FinitePartialFunction restraint;
    for (nat p : restraint_pool)
      if (rng() % 2 == 0) restraint.define(p, rng() % 2 == 0);

    AxiomStore store;
    nat n = 1 + rng() % 6;
    for (nat a = 0; a < n; ++a) {
      nat level = 2 + rng() % 2;
      const auto& pool = level == 2 ? level2_targets : level3_targets;
      nat target = pool[rng() % pool.size()];
      FinitePartialFunction condition;
      nat entries = rng() % 3;
      for (nat j = 0; j < entries; ++j) {
        nat p = condition_pool[rng() % condition_pool.size()];
        if (column_of(p) >= level || condition.defined(p)) continue;
        condition.define(p, rng() % 2 == 0);
      }
      store.append(Axiom{level, condition, target}, a);
    }
    SetDescription fast = yields_over(store, n, guess, restraint, bound, horizon);
    SetDescription slow =
        brute_force_yields(store, n, guess, restraint, bound, horizon);
    for (nat p = 0; p < horizon; ++p)
      if (fast.contains(p) != slow.contains(p)) {
        ++mismatched;
        break;
      }
  }
  check(mismatched == 0,
        std::to_string(mismatched) + " instances disagreed with the reference");
  r.detail = std::to_string(instances) + " instances";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult evaluation_properties() {
  CriterionResult r;
  r.label = "membership is monotone for positive conditions and local to lower columns";
  r.budget = 10.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  std::mt19937_64 rng(8831);
  const nat horizon = 28;
  const std::vector<nat> target_pool{7, 12, 13, 16, 17, 18, 22, 23, 24, 26};
  const std::vector<nat> condition_pool{0, 1, 2, 3, 4, 5, 6,
                                        8, 9, 10, 7, 12, 13};

  int monotone_bad = 0;
  for (int i = 0; i < 250; ++i) {
    AxiomStore store;
    nat n = 2 + rng() % 5;
    for (nat a = 0; a < n; ++a) {
      nat level = 1 + rng() % 3;
      nat target;
      do {
        target = target_pool[rng() % target_pool.size()];
      } while (column_of(target) < level);
      FinitePartialFunction condition;
      nat entries = rng() % 3;
      for (nat j = 0; j < entries; ++j) {
        nat p = condition_pool[rng() % condition_pool.size()];
        if (column_of(p) >= level || condition.defined(p)) continue;
        condition.define(p, true);  // positive conditions only
      }
      store.append(Axiom{level, condition, target}, a + 1);
    }
    SetDescription prev = yields(store, 0, horizon);
    for (nat s = 1; s <= n; ++s) {
      SetDescription cur = yields(store, s, horizon);
      for (nat p = 0; p < horizon; ++p)
        if (prev.contains(p) && !cur.contains(p)) {
          ++monotone_bad;
          s = n;
          break;
        }
      prev = cur;
    }
  }
  check(monotone_bad == 0, std::to_string(monotone_bad) +
                               " instances lost members as the store grew");

  const std::vector<nat> high_targets{16, 22, 23};
  int locality_bad = 0;
  for (int i = 0; i < 250; ++i) {
    AxiomStore store;
    nat n = 1 + rng() % 6;
    for (nat a = 0; a < n; ++a) {
      nat level = 1 + rng() % 3;
      nat target;
      do {
        target = target_pool[rng() % target_pool.size()];
      } while (column_of(target) < level);
      FinitePartialFunction condition;
      nat entries = rng() % 3;
      for (nat j = 0; j < entries; ++j) {
        nat p = condition_pool[rng() % condition_pool.size()];
        if (column_of(p) >= level || condition.defined(p)) continue;
        condition.define(p, rng() % 2 == 0);
      }
      store.append(Axiom{level, condition, target}, a);
    }
    SetDescription before = yields(store, n + 4, horizon);

    nat extra = 1 + rng() % 3;
    for (nat a = 0; a < extra; ++a) {
      nat level = 4 + rng() % 2;
      nat target;
      do {
        target = high_targets[rng() % high_targets.size()];
      } while (column_of(target) < level);
      FinitePartialFunction condition;
      nat entries = rng() % 3;
      for (nat j = 0; j < entries; ++j) {
        nat p = condition_pool[rng() % condition_pool.size()];
        if (column_of(p) >= level || condition.defined(p)) continue;
        condition.define(p, rng() % 2 == 0);
      }
      store.append(Axiom{level, condition, target}, n + a);
    }
    SetDescription after = yields(store, n + 4, horizon);
    for (nat p = 0; p < horizon; ++p)
      if (column_of(p) <= 3 && before.contains(p) != after.contains(p)) {
        ++locality_bad;
        break;
      }
  }
  check(locality_bad == 0,
        std::to_string(locality_bad) +
            " instances changed a low column after high-level appends");

  r.detail = "500 instances";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 4

CriterionResult diagonal_run(const FixtureSet& fx, RunResult& out) {
  CriterionResult r;
  r.label = "the diagonal scenario activates, tracks the approximation, and diagonalizes";
  r.budget = 60.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  RunConfig config;
  config.fixtures_label = "diagonal";
  config.stages = 1000;
  out = run_construction(config, fx);
  const Trace& trace = out.trace;

  const StageRecord& act_stage = trace.records[10];
  check(act_stage.t == 11 && act_stage.activated.has_value(),
        "no activation at stage 11");
  if (act_stage.activated) {
    const ActivationRecord& act = *act_stage.activated;
    check(act.side0 == FinitePartialFunction{{0, 0}, {1, 0}, {2, 0}, {3, 0}},
          "unexpected negative side of the split pair");
    check(act.side1 == FinitePartialFunction{{0, 0}, {1, 0}, {2, 0}, {3, 1}},
          "unexpected positive side of the split pair");
    check(act.input == 0, "unexpected disagreement input");
    check(act.control == 8, "unexpected control point");
    check(act.flag == 13, "unexpected flag point");
    check(act.marker0 == 4, "unexpected initial marker row");
    check(act.floor_before == 12, "unexpected allocation floor at activation");
  }

  std::set<nat> eventful;
  for (const StageRecord& rec : trace.records)
    if (rec.eventful == std::optional<bool>(true)) eventful.insert(rec.t);
  check(eventful == std::set<nat>{22, 46, 67},
        "side switches not at stages 22, 46, 67");

  int settled = 0;
  bool settled_ok = true;
  for (const StageRecord& rec : trace.records)
    if (rec.node.empty() && rec.t >= 79) {
      ++settled;
      settled_ok = settled_ok && rec.outcome == 5;
    }
  check(settled >= 10 && settled_ok,
        "root outcome not settled at 5 from stage 79 on");

  const SetDescription& final_set = out.yield;
  check(final_set.contains(13) && !final_set.contains(8),
        "flag and control not separated in the final set");
  const TableFunctional* f0 = fx.functional(0);
  std::optional<bool> phi;
  if (f0) phi = eval_functional(*f0, final_set, 0, kNoBudget);
  bool v = delta2_value(fx.delta2, 0, 0, 1000);
  check(phi.has_value(), "functional undefined on the final set");
  check(phi.has_value() && *phi != v,
        "functional output equals the approximated value");

  r.detail = "1000 stages";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 5

CriterionResult flag_separation(const RunResult& diag) {
  CriterionResult r;
  r.label = "sibling guesses disagree about the flag point";
  r.budget = 10.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  const FinitePartialFunction* switched = nullptr;
  const FinitePartialFunction* held = nullptr;
  for (const StageRecord& rec : diag.trace.records)
    for (const GuessRecord& g : rec.defined) {
      if (g.node == NodeAddress{1}) switched = &g.restraint;
      if (g.node == NodeAddress{2}) held = &g.restraint;
    }
  check(switched != nullptr && held != nullptr,
        "guesses for the first two comparison children not on record");
  if (switched && held) {
    check(switched->value(13) == std::optional<bool>(false),
          "switch child does not pin the flag out");
    check(held->value(13) == std::optional<bool>(true),
          "hold child does not pin the flag in");
  }

  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 6

CriterionResult cover_run() {
  CriterionResult r;
  r.label = "the cover scenario enumerates one eligible element exactly once";
  r.budget = 30.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  FixtureSet fx = samples::cover_scenario();
  RunConfig config;
  config.fixtures_label = "cover";
  config.stages = 500;
  RunResult result = run_construction(config, fx);

  std::size_t axiom_count = 0;
  int actings = 0;
  bool outcomes_ok = true;
  for (const StageRecord& rec : result.trace.records) {
    axiom_count += rec.axioms.size();
    if (rec.node == NodeAddress{0}) {
      if (rec.acted_element) {
        ++actings;
        check(rec.t == 17, "acting stage is not 17");
        check(rec.exec == 5, "acting execution count is not 5");
        check(*rec.acted_element == 7, "acted element is not 7");
      }
      outcomes_ok = outcomes_ok && rec.outcome == (rec.t < 17 ? 0u : 1u);
    }
  }
  check(actings == 1, "expected exactly one acting stage");
  check(outcomes_ok, "outcome did not switch from 0 to 1 at stage 17");
  check(axiom_count == 1, "store holds more than the one cover axiom");

  VerifyReport report = verify_trace(result.trace, fx);
  for (const CheckResult& c : report.checks)
    check(c.passed, "audit failed: " + c.name);

  r.detail = "500 stages";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 7

CriterionResult replay_and_faults() {
  CriterionResult r;
  r.label = "runs replay byte for byte and every tampering style is caught";
  r.budget = 30.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  FixtureSet fx = samples::layered_scenario();
  RunConfig config;
  config.fixtures_label = "layered";
  config.stages = 200;
  RunResult first = run_construction(config, fx);
  RunResult second = run_construction(config, fx);
  std::string text = serialize_trace(first.trace);
  check(serialize_trace(second.trace) == text, "two runs differ");
  check(serialize_trace(parse_trace(text)) == text,
        "serialization round trip is not the identity");

  VerifyReport clean = verify_trace(first.trace, fx);
  for (const CheckResult& c : clean.checks)
    check(c.passed, "audit failed on a clean trace: " + c.name);

  for (FaultKind kind : {FaultKind::strip_condition, FaultKind::reorder_records,
                         FaultKind::forge_outcome, FaultKind::duplicate_axiom,
                         FaultKind::rewrite_guess}) {
    Trace broken = inject_fault(first.trace, kind);
    std::string name = expected_failing_check(kind);
    VerifyReport report = verify_trace(broken, fx);
    const CheckResult* hit = report.find(name);
    check(hit != nullptr && !hit->passed,
          "tampering not caught by the " + name + " audit");
  }

  r.detail = "200 stages, 5 faults";
  r.seconds = elapsed(t0);
  return r;
}

// ---------------------------------------------------------------- criterion 8

CriterionResult fairness_and_path(const RunResult& diag) {
  CriterionResult r;
  r.label = "late stages keep every shallow depth active and the path settles";
  r.budget = 60.0;
  Check check{r.problems};
  auto t0 = Clock::now();

  const std::vector<StageRecord>& records = diag.trace.records;
  nat last = records.back().t;
  nat window_start = last - (last - records.front().t) / 4;
  for (std::size_t depth = 0; depth <= 3; ++depth) {
    int count = 0;
    for (const StageRecord& rec : records)
      if (rec.t >= window_start && rec.node.size() == depth) ++count;
    check(count >= 2, "depth " + std::to_string(depth) +
                          " executed fewer than twice in the last quarter");
  }

  PathEstimate path = liminf_path(records, 6);
  check(path.stable_prefix() >= 3,
        "fewer than three settled outcomes along the path");
  if (path.entries.size() >= 3) {
    check(path.entries[0].value == 5, "root's settled outcome is not 5");
    check(path.entries[1].value == 0, "depth 1 settled outcome is not 0");
    check(path.entries[2].value == 0, "depth 2 settled outcome is not 0");
  }

  r.detail = "window from stage " + std::to_string(window_start);
  r.seconds = elapsed(t0);
  return r;
}

}  // namespace

int main() {
  FixtureSet diag_fixtures = samples::diagonal_scenario();
  RunResult diag;

  std::vector<CriterionResult> results;
  results.push_back(random_store_agreement());
  results.push_back(guided_agreement());
  results.push_back(evaluation_properties());
  results.push_back(diagonal_run(diag_fixtures, diag));
  results.push_back(flag_separation(diag));
  results.push_back(cover_run());
  results.push_back(replay_and_faults());
  results.push_back(fairness_and_path(diag));

  int failures = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    CriterionResult& r = results[i];
    if (r.budget > 0.0 && r.seconds > r.budget)
      r.problems.push_back("exceeded the time budget");
    bool passed = r.problems.empty();
    if (!passed) ++failures;
    std::string timing = r.detail.empty() ? "" : r.detail + ", ";
    std::printf("[%s] %zu %s (%s%.2fs of %.0fs)\n", passed ? "PASS" : "FAIL",
                i + 1, r.label.c_str(), timing.c_str(), r.seconds, r.budget);
    for (const std::string& p : r.problems)
      std::printf("       - %s\n", p.c_str());
  }
  std::printf("%zu of %zu criteria passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
