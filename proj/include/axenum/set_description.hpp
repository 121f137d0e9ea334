#pragma once

#include <map>
#include <set>
#include <stdexcept>

#include "axenum/coding.hpp"
#include "axenum/partial_function.hpp"

namespace axenum {

// One column of a set: a default bit plus finitely many exceptional rows.
// default_bit = 0 describes a finite column, default_bit = 1 a cofinite one.
struct ColumnDescription {
  bool default_bit = false;
  std::set<nat> exceptions;

  bool member(nat row) const { return default_bit != (exceptions.count(row) != 0); }
  bool trivial() const { return !default_bit && exceptions.empty(); }

  auto operator<=>(const ColumnDescription&) const = default;
};

// A subset of omega presented column by column.  Columns not listed are empty.
// All listed columns are exact: membership queries are answered for every
// position, not just below some bound.
class SetDescription {
 public:
  using Columns = std::map<nat, ColumnDescription>;

  SetDescription() = default;

  bool contains(nat pos) const {
    auto [col, row] = unpair_code(pos);
    auto it = columns_.find(col);
    if (it == columns_.end()) return false;
    return it->second.member(row);
  }

  void set_membership(nat pos, bool in) {
    auto [col, row] = unpair_code(pos);
    auto it = columns_.find(col);
    if (it == columns_.end()) {
      if (!in) return;
      columns_[col].exceptions.insert(row);
      return;
    }
    ColumnDescription& c = it->second;
    if (c.default_bit == in)
      c.exceptions.erase(row);
    else
      c.exceptions.insert(row);
    if (c.trivial()) columns_.erase(it);
  }

  void insert(nat pos) { set_membership(pos, true); }

  void set_column(nat col, ColumnDescription desc) {
    if (desc.trivial())
      columns_.erase(col);
    else
      columns_[col] = std::move(desc);
  }

  const Columns& columns() const { return columns_; }

  const ColumnDescription* column(nat col) const {
    auto it = columns_.find(col);
    return it == columns_.end() ? nullptr : &it->second;
  }

  // Keeps only columns < l.
  SetDescription restricted_below(nat l) const {
    SetDescription out;
    for (const auto& [col, desc] : columns_)
      if (col < l) out.columns_[col] = desc;
    return out;
  }

  bool has_cofinite_column() const {
    for (const auto& [col, desc] : columns_)
      if (desc.default_bit) return true;
    return false;
  }

  // Largest position this description explicitly names.  Cofinite columns
  // count only through their exceptions; the column index itself is covered
  // via the row-0 position.
  nat max_mentioned() const {
    nat best = 0;
    for (const auto& [col, desc] : columns_) {
      best = std::max(best, pair_code(col, 0));
      if (!desc.exceptions.empty())
        best = std::max(best, pair_code(col, *desc.exceptions.rbegin()));
    }
    return best;
  }

  auto operator<=>(const SetDescription&) const = default;

 private:
  Columns columns_;
};

// Does the set agree with f everywhere f is defined?
inline bool set_extends(const SetDescription& s, const FinitePartialFunction& f) {
  for (const auto& [pos, bit] : f.entries())
    if (s.contains(pos) != (bit != 0)) return false;
  return true;
}

// The length-len binary string of the set's characteristic function.
inline FinitePartialFunction prefix_string(const SetDescription& s, nat len) {
  FinitePartialFunction out;
  for (nat p = 0; p < len; ++p) out.define(p, s.contains(p));
  return out;
}

// Membership below bound, emptiness above: the use-convention truncation.
inline SetDescription truncate_below(const SetDescription& s, nat bound) {
  SetDescription out;
  for (const auto& [col, desc] : s.columns()) {
    if (pair_code(col, 0) >= bound) break;
    ColumnDescription finite;
    for (nat row = 0; pair_code(col, row) < bound; ++row)
      if (desc.member(row)) finite.exceptions.insert(row);
    out.set_column(col, std::move(finite));
  }
  return out;
}

}  // namespace axenum
