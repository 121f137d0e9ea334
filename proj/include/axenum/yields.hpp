#pragma once

#include <set>
#include <stdexcept>

#include "axenum/axiom.hpp"
#include "axenum/set_description.hpp"

namespace axenum {

// Checks the shape of a guess pair: guessed columns confined below the bound,
// restraint consistent with the guessed columns where both speak.
inline void validate_guess(const SetDescription& guess_columns,
                           const FinitePartialFunction& restraint,
                           nat column_bound) {
  for (const auto& [col, desc] : guess_columns.columns())
    if (col >= column_bound)
      throw std::invalid_argument("guessed columns reach the bound");
  for (const auto& [pos, bit] : restraint.entries())
    if (column_of(pos) < column_bound &&
        guess_columns.contains(pos) != (bit != 0))
      throw std::invalid_argument("restraint contradicts guessed columns");
}

// The set the axioms build over a guess: columns below the bound are taken
// verbatim from the guess, restrained positions follow the restraint, and
// every other position of a column >= bound enters exactly when some axiom
// whose condition holds of the columns already built targets it.
//
// Columns are settled in increasing order.  A valid axiom's condition sits
// strictly below its target's column, so each membership query lands in a
// column settled earlier and the result is exact at every position; the
// horizon parameter records the caller's inspection bound but does not limit
// the computation.
inline SetDescription yields_over(const AxiomStore& store, nat stage,
                                  const SetDescription& guess_columns,
                                  const FinitePartialFunction& restraint,
                                  nat column_bound, nat horizon) {
  (void)horizon;
  validate_guess(guess_columns, restraint, column_bound);

  std::set<nat> work_columns;
  for (const auto& [col, desc] : guess_columns.columns()) work_columns.insert(col);
  for (const auto& [pos, bit] : restraint.entries()) {
    nat col = column_of(pos);
    if (col >= column_bound && bit) work_columns.insert(col);
  }
  store.for_each_upto(stage, [&](const Axiom& a) {
    work_columns.insert(column_of(a.target));
  });

  SetDescription out;
  for (nat col : work_columns) {
    if (col < column_bound) {
      if (const ColumnDescription* desc = guess_columns.column(col))
        out.set_column(col, *desc);
      continue;
    }
    ColumnDescription built;
    for (const auto& [pos, bit] : restraint.entries())
      if (bit && column_of(pos) == col) built.exceptions.insert(row_of(pos));
    store.for_each_upto(stage, [&](const Axiom& a) {
      if (column_of(a.target) != col) return;
      if (restraint.defined(a.target)) return;
      if (set_extends(out, a.condition)) built.exceptions.insert(row_of(a.target));
    });
    out.set_column(col, std::move(built));
  }
  return out;
}

inline SetDescription yields(const AxiomStore& store, nat stage, nat horizon) {
  return yields_over(store, stage, SetDescription{}, FinitePartialFunction{}, 0,
                     horizon);
}

}  // namespace axenum
