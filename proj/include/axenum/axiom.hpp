#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "axenum/coding.hpp"
#include "axenum/partial_function.hpp"

namespace axenum {

// An enumeration axiom (l, sigma, y): if the condition sigma holds of the set
// under construction, the target y enters it.  Conditions may only constrain
// columns below the level l, and the target must sit in column >= l, so each
// column is determined by the columns before it.
struct Axiom {
  nat level = 0;
  FinitePartialFunction condition;
  nat target = 0;

  auto operator<=>(const Axiom&) const = default;
};

inline bool validate_axiom(const Axiom& a) {
  for (const auto& [pos, bit] : a.condition.entries())
    if (column_of(pos) >= a.level) return false;
  return column_of(a.target) >= a.level;
}

// Conditions the axiom on the part of the restraint its level can see.
// Errors out if the axiom already contradicts the restraint there.
inline Axiom make_dependent(nat level, const FinitePartialFunction& condition,
                            nat target, const FinitePartialFunction& restraint) {
  FinitePartialFunction visible = restraint.restricted(ColumnBand::below, level);
  if (!condition.compatible_with(visible))
    throw std::invalid_argument("axiom condition contradicts the restraint");
  Axiom out{level, condition.union_with(visible), target};
  if (!validate_axiom(out))
    throw std::invalid_argument("dependent axiom fails validation");
  return out;
}

// Stage-stamped axiom collection with set semantics on the (l, sigma, y)
// triple.  Append rejects invalid axioms and non-monotone stage stamps;
// re-appending an existing triple is a no-op.
class AxiomStore {
 public:
  struct Entry {
    Axiom axiom;
    nat stage = 0;
  };

  bool append(Axiom a, nat stage) {
    if (!validate_axiom(a)) throw std::invalid_argument("invalid axiom rejected");
    if (!entries_.empty() && stage < entries_.back().stage)
      throw std::invalid_argument("axiom stages must be non-decreasing");
    if (!index_.insert(a).second) return false;
    entries_.push_back(Entry{std::move(a), stage});
    return true;
  }

  bool contains(const Axiom& a) const { return index_.count(a) != 0; }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Every axiom enumerated by stage s, in enumeration order.
  template <typename Fn>
  void for_each_upto(nat stage, Fn&& fn) const {
    for (const Entry& e : entries_) {
      if (e.stage > stage) break;
      fn(e.axiom);
    }
  }

  nat max_mentioned() const {
    nat best = 0;
    for (const Entry& e : entries_) {
      best = std::max(best, e.axiom.level);
      best = std::max(best, e.axiom.target);
      if (!e.axiom.condition.empty())
        best = std::max(best, e.axiom.condition.length() - 1);
    }
    return best;
  }

 private:
  std::vector<Entry> entries_;
  std::set<Axiom> index_;
};

}  // namespace axenum
