#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "axenum/axiom.hpp"
#include "axenum/set_description.hpp"

namespace axenum {

// Reference evaluator.  Instead of settling columns in order, this searches
// for the unique membership assignment below the horizon satisfying, at every
// position, the defining equivalence: below the bound follow the guess, on
// the restraint follow the restraint, elsewhere membership iff some axiom
// whose condition the assignment satisfies targets the position.
//
// Only positions targeted by an axiom outside the restraint and at or above
// the bound can genuinely vary; every other position admits a single value,
// and any assignment deviating there fails its own equivalence.  The search
// therefore enumerates the target positions and checks the equivalence at
// every position below the horizon, so it visits exactly the assignments a
// full enumeration would accept.
//
// Errors if the instance mentions a position at or beyond the horizon, if the
// free positions are too many to enumerate, or if the count of satisfying
// assignments is not one.
inline SetDescription brute_force_yields(const AxiomStore& store, nat stage,
                                         const SetDescription& guess_columns,
                                         const FinitePartialFunction& restraint,
                                         nat column_bound, nat horizon) {
  std::vector<Axiom> axioms;
  store.for_each_upto(stage, [&](const Axiom& a) { axioms.push_back(a); });

  auto require_below = [&](nat pos) {
    if (pos >= horizon)
      throw std::invalid_argument("brute force horizon too small for instance");
  };
  for (const Axiom& a : axioms) {
    require_below(a.target);
    for (const auto& [pos, bit] : a.condition.entries()) require_below(pos);
  }
  for (const auto& [pos, bit] : restraint.entries()) require_below(pos);
  for (const auto& [col, desc] : guess_columns.columns()) {
    require_below(pair_code(col, 0));
    for (nat row : desc.exceptions) require_below(pair_code(col, row));
  }

  std::vector<nat> free_positions;
  for (const Axiom& a : axioms) {
    nat pos = a.target;
    if (column_of(pos) < column_bound || restraint.defined(pos)) continue;
    bool seen = false;
    for (nat q : free_positions) seen = seen || q == pos;
    if (!seen) free_positions.push_back(pos);
  }
  if (free_positions.size() > 25)
    throw std::invalid_argument("brute force instance too large");

  std::map<nat, bool> fixed;
  for (nat pos = 0; pos < horizon; ++pos) {
    nat col = column_of(pos);
    if (col < column_bound)
      fixed[pos] = guess_columns.contains(pos);
    else if (auto v = restraint.value(pos))
      fixed[pos] = *v;
    else
      fixed[pos] = false;
  }

  std::vector<std::map<nat, bool>> solutions;
  const nat total = nat{1} << free_positions.size();
  for (nat mask = 0; mask < total; ++mask) {
    std::map<nat, bool> cand = fixed;
    for (std::size_t i = 0; i < free_positions.size(); ++i)
      cand[free_positions[i]] = (mask >> i) & 1;

    auto satisfied = [&](const FinitePartialFunction& cond) {
      for (const auto& [pos, bit] : cond.entries())
        if (cand.at(pos) != (bit != 0)) return false;
      return true;
    };

    bool ok = true;
    for (nat pos = 0; pos < horizon && ok; ++pos) {
      bool expected;
      if (column_of(pos) < column_bound) {
        expected = guess_columns.contains(pos);
      } else if (auto v = restraint.value(pos)) {
        expected = *v;
      } else {
        expected = false;
        for (const Axiom& a : axioms)
          if (a.target == pos && satisfied(a.condition)) {
            expected = true;
            break;
          }
      }
      ok = cand.at(pos) == expected;
    }
    if (ok) solutions.push_back(std::move(cand));
  }

  if (solutions.empty())
    throw std::runtime_error("no assignment satisfies the axiom set");
  if (solutions.size() > 1)
    throw std::runtime_error("multiple assignments satisfy the axiom set");

  SetDescription out;
  for (const auto& [col, desc] : guess_columns.columns())
    if (col < column_bound) out.set_column(col, desc);
  for (const auto& [pos, in] : solutions.front()) {
    if (column_of(pos) < column_bound) continue;
    if (in) out.insert(pos);
  }
  return out;
}

}  // namespace axenum
