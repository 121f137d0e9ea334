#pragma once

#include "axenum/coding.hpp"
#include "axenum/partial_function.hpp"
#include "axenum/set_description.hpp"

namespace axenum {

// The source of "large" numbers.  A single counter is advanced past every
// number the construction mentions; a fresh request returns something the
// counter has never been at or beyond.  Freshness is positional: a request
// directed at a column picks the least row whose coded position clears the
// counter, so position growth stays roughly linear in the number of mentions.
class FreshAllocator {
 public:
  struct ColumnPick {
    nat row = 0;
    nat position = 0;
  };

  nat floor() const { return floor_; }

  void mention(nat n) {
    if (n + 1 > floor_) floor_ = n + 1;
  }

  void mention_function(const FinitePartialFunction& f) {
    if (!f.empty()) mention(f.length() - 1);
  }

  void mention_set(const SetDescription& s) { mention(s.max_mentioned()); }

  // A plain number larger than everything mentioned.
  nat fresh_number() {
    nat v = floor_;
    mention(v);
    return v;
  }

  // The least row of the column whose position is larger than everything
  // mentioned so far.  The position itself is recorded as mentioned.
  ColumnPick fresh_in_column(nat col) {
    nat row = 0;
    if (floor_ > 0) {
      // Estimate from the pairing inverse, then walk to the exact row.
      auto [c_est, r_est] = unpair_code(floor_ - 1);
      nat diag = c_est + r_est;
      row = diag > col ? diag - col : 0;
      while (row > 0 && pair_code(col, row - 1) >= floor_) --row;
      while (pair_code(col, row) < floor_) ++row;
    }
    ColumnPick pick{row, pair_code(col, row)};
    mention(pick.position);
    return pick;
  }

 private:
  nat floor_ = 0;
};

}  // namespace axenum
