#pragma once

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axenum/json_conv.hpp"
#include "axenum/set_description.hpp"

// Finite stand-ins for the three kinds of outside data the construction
// consults: oracle functionals given by explicit computation tables, limit
// computable 0/1 values given by flip schedules, and computably enumerable
// sets given by (element, stage) schedules.

namespace axenum {

inline constexpr nat kNoBudget = std::numeric_limits<nat>::max();

// One tabulated computation: on input x, with the oracle agreeing with sigma,
// the machine halts after `steps` steps with output v.  The use convention is
// structural: sigma may only constrain positions below `steps`.
struct FunctionalRow {
  nat x = 0;
  FinitePartialFunction sigma;
  bool v = false;
  nat steps = 0;
};

struct TableFunctional {
  std::vector<FunctionalRow> rows;
};

struct FunctionalReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Checks the use convention and single-valuedness: two rows for the same
// input with compatible conditions must agree on the output.
inline FunctionalReport validate_functional(const TableFunctional& f) {
  FunctionalReport report;
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    const FunctionalRow& r = f.rows[i];
    if (r.sigma.length() > r.steps)
      report.problems.push_back("row " + std::to_string(i) +
                                " constrains positions at or beyond its step count");
    for (std::size_t j = 0; j < i; ++j) {
      const FunctionalRow& q = f.rows[j];
      if (q.x == r.x && q.v != r.v && q.sigma.compatible_with(r.sigma))
        report.problems.push_back("rows " + std::to_string(j) + " and " +
                                  std::to_string(i) +
                                  " give different outputs on compatible oracles");
    }
  }
  return report;
}

// Runs the table against a set oracle: the first row for x within the budget
// whose condition the oracle satisfies fires.  Single-valuedness makes the
// row order immaterial for the value.
inline std::optional<bool> eval_functional(const TableFunctional& f,
                                           const SetDescription& oracle, nat x,
                                           nat budget) {
  for (const FunctionalRow& r : f.rows) {
    if (r.x != x || r.steps > budget) continue;
    if (set_extends(oracle, r.sigma)) return r.v;
  }
  return std::nullopt;
}

// Same, against a finite string: the condition must lie inside the string's
// domain and agree with it.
inline std::optional<bool> eval_functional(const TableFunctional& f,
                                           const FinitePartialFunction& oracle,
                                           nat x, nat budget) {
  for (const FunctionalRow& r : f.rows) {
    if (r.x != x || r.steps > budget) continue;
    if (oracle.extends(r.sigma)) return r.v;
  }
  return std::nullopt;
}

// A limit computable 0/1 point: starts at `init` and flips at each listed
// stage; with a period, keeps flipping that often past the last listed flip.
struct Delta2Point {
  bool init = false;
  std::vector<nat> flips;
  std::optional<nat> period;
};

struct Delta2Array {
  std::map<nat, std::map<nat, Delta2Point>> points;  // index -> input -> point
};

inline bool delta2_value(const Delta2Array& d, nat index, nat x, nat stage) {
  auto it = d.points.find(index);
  if (it == d.points.end()) return false;
  auto pt = it->second.find(x);
  if (pt == it->second.end()) return false;
  const Delta2Point& p = pt->second;
  nat count = static_cast<nat>(
      std::upper_bound(p.flips.begin(), p.flips.end(), stage) - p.flips.begin());
  if (p.period && *p.period > 0) {
    nat last = p.flips.empty() ? 0 : p.flips.back();
    if (stage > last) count += (stage - last) / *p.period;
  }
  return p.init != ((count & 1) != 0);
}

// Enumeration schedules: element e appears in W at its listed stage.
struct CeSchedule {
  std::map<nat, std::vector<std::pair<nat, nat>>> schedules;  // index -> (elem, stage)
};

inline std::vector<nat> ce_members(const CeSchedule& w, nat index, nat stage) {
  std::vector<nat> out;
  auto it = w.schedules.find(index);
  if (it == w.schedules.end()) return out;
  for (const auto& [elem, at] : it->second)
    if (at <= stage) out.push_back(elem);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FixtureSet {
  std::map<nat, TableFunctional> functionals;
  Delta2Array delta2;
  CeSchedule ce;

  const TableFunctional* functional(nat index) const {
    auto it = functionals.find(index);
    return it == functionals.end() ? nullptr : &it->second;
  }

  nat max_mentioned() const {
    nat best = 0;
    for (const auto& [idx, f] : functionals)
      for (const FunctionalRow& r : f.rows) {
        best = std::max({best, r.x, r.steps});
        if (!r.sigma.empty()) best = std::max(best, r.sigma.length() - 1);
      }
    for (const auto& [idx, pts] : delta2.points)
      for (const auto& [x, p] : pts) {
        best = std::max(best, x);
        if (!p.flips.empty()) best = std::max(best, p.flips.back());
      }
    for (const auto& [idx, sched] : ce.schedules)
      for (const auto& [elem, at] : sched) best = std::max({best, elem, at});
    return best;
  }
};

inline json to_json(const FixtureSet& fx) {
  json out;
  out["functionals"] = json::array();
  for (const auto& [idx, f] : fx.functionals) {
    json rows = json::array();
    for (const FunctionalRow& r : f.rows)
      rows.push_back(json{{"x", r.x},
                          {"sigma", to_json(r.sigma)},
                          {"v", r.v ? 1 : 0},
                          {"steps", r.steps}});
    out["functionals"].push_back(json{{"index", idx}, {"rows", std::move(rows)}});
  }
  out["delta2"] = json::array();
  for (const auto& [idx, pts] : fx.delta2.points) {
    json points = json::array();
    for (const auto& [x, p] : pts) {
      json pj{{"x", x}, {"init", p.init ? 1 : 0}, {"flips", p.flips}};
      if (p.period) pj["period"] = *p.period;
      points.push_back(std::move(pj));
    }
    out["delta2"].push_back(json{{"index", idx}, {"points", std::move(points)}});
  }
  out["ce"] = json::array();
  for (const auto& [idx, sched] : fx.ce.schedules) {
    json pairs = json::array();
    for (const auto& [elem, at] : sched) pairs.push_back(json::array({elem, at}));
    out["ce"].push_back(json{{"index", idx}, {"schedule", std::move(pairs)}});
  }
  return out;
}

inline FixtureSet fixtures_from_json(const json& j) {
  FixtureSet fx;
  if (j.contains("functionals"))
    for (const auto& fj : j.at("functionals")) {
      TableFunctional f;
      for (const auto& rj : fj.at("rows")) {
        FunctionalRow r;
        r.x = rj.at("x").get<nat>();
        r.sigma = function_from_json(rj.at("sigma"));
        r.v = rj.at("v").get<int>() != 0;
        r.steps = rj.at("steps").get<nat>();
        f.rows.push_back(std::move(r));
      }
      FunctionalReport report = validate_functional(f);
      if (!report.ok())
        throw std::invalid_argument("functional " +
                                    fj.at("index").dump() + " rejected: " +
                                    report.problems.front());
      fx.functionals[fj.at("index").get<nat>()] = std::move(f);
    }
  if (j.contains("delta2"))
    for (const auto& dj : j.at("delta2")) {
      nat idx = dj.at("index").get<nat>();
      for (const auto& pj : dj.at("points")) {
        Delta2Point p;
        p.init = pj.at("init").get<int>() != 0;
        for (const auto& s : pj.at("flips")) p.flips.push_back(s.get<nat>());
        if (!std::is_sorted(p.flips.begin(), p.flips.end()) ||
            std::adjacent_find(p.flips.begin(), p.flips.end()) != p.flips.end())
          throw std::invalid_argument("flip stages must be strictly increasing");
        if (pj.contains("period")) {
          p.period = pj.at("period").get<nat>();
          if (*p.period == 0) throw std::invalid_argument("flip period must be positive");
        }
        fx.delta2.points[idx][pj.at("x").get<nat>()] = std::move(p);
      }
    }
  if (j.contains("ce"))
    for (const auto& cj : j.at("ce")) {
      nat idx = cj.at("index").get<nat>();
      for (const auto& e : cj.at("schedule")) {
        if (!e.is_array() || e.size() != 2)
          throw std::invalid_argument("ce schedule entries must be [element, stage]");
        fx.ce.schedules[idx].emplace_back(e.at(0).get<nat>(), e.at(1).get<nat>());
      }
    }
  return fx;
}

inline FixtureSet load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path);
  json j = json::parse(in);
  return fixtures_from_json(j);
}

}  // namespace axenum
