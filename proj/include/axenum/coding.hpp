#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

// Position coding.  Every natural number z names a cell of the plane via the
// Cantor pairing bijection; the first coordinate is the column, the second the
// row.  Columns partition omega, and all machinery downstream (axioms, guesses,
// strategy bookkeeping) addresses cells through this coding.

namespace axenum {

using nat = std::uint64_t;

// pair_code(n, x) = (n+x)(n+x+1)/2 + x.  Strictly monotone in each argument.
inline nat pair_code(nat n, nat x) {
  nat s = n + x;
  return s * (s + 1) / 2 + x;
}

inline std::pair<nat, nat> unpair_code(nat z) {
  // Largest s with s(s+1)/2 <= z, found from a float estimate and corrected.
  nat s = static_cast<nat>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 > z) --s;
  while ((s + 1) * (s + 2) / 2 <= z) ++s;
  nat x = z - s * (s + 1) / 2;
  return {s - x, x};
}

inline nat column_of(nat z) { return unpair_code(z).first; }
inline nat row_of(nat z) { return unpair_code(z).second; }

}  // namespace axenum
