#pragma once

#include <vector>

#include "axenum/coding.hpp"

namespace axenum {

// A node of the strategy tree, addressed by the outcome path from the root.
using NodeAddress = std::vector<nat>;

inline NodeAddress child_of(const NodeAddress& node, nat outcome) {
  NodeAddress out = node;
  out.push_back(outcome);
  return out;
}

// True when a lies on the path from the root to b, b itself included.
inline bool is_ancestor(const NodeAddress& a, const NodeAddress& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// The two requirement families.  A diagonal requirement defeats one candidate
// reduction to one limit computable set; a cover requirement intersects the
// constructed set with one enumerable set.
enum class RequirementKind { diagonal, cover };

struct RequirementAssignment {
  RequirementKind kind = RequirementKind::diagonal;
  nat e = 0;
  nat i = 0;            // meaningful for diagonal requirements only
  nat base_column = 0;  // first column the node may enumerate into

  auto operator<=>(const RequirementAssignment&) const = default;
};

// Depth determines the requirement: even depth 2k carries the diagonal
// requirement coded by k with base column 3k, odd depth 2e+1 carries the
// cover requirement for index e with base column 3e+2.  The three residues
// mod 3 keep diagonal working columns, diagonal flag columns, and cover
// columns disjoint.
inline RequirementAssignment assign_requirement(std::size_t depth) {
  RequirementAssignment out;
  if (depth % 2 == 0) {
    nat k = depth / 2;
    auto [e, i] = unpair_code(k);
    out.kind = RequirementKind::diagonal;
    out.e = e;
    out.i = i;
    out.base_column = 3 * k;
  } else {
    nat e = (depth - 1) / 2;
    out.kind = RequirementKind::cover;
    out.e = e;
    out.i = 0;
    out.base_column = 3 * e + 2;
  }
  return out;
}

}  // namespace axenum
