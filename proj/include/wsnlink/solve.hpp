#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "wsnlink/errors.hpp"

namespace wsnlink {

/// Shrinks [lo, hi] around the boundary of a monotone predicate that holds
/// at lo and fails at hi, until hi - lo <= tol. Returns the midpoint.
template <class Pred>
double bisect_boundary(Pred&& holds, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

/**
 * Largest x >= start where a predicate, true near `start` and false far
 * away, still holds. Returns 0 if it fails at `start`. The upper bracket
 * doubles from `start` and gives up past `cap`. Resolution is `tol`
 * absolute or 1e-9 relative, whichever is finer.
 */
template <class Pred>
double last_holding_distance(Pred&& holds, double start, double cap, double tol) {
  if (!holds(start)) return 0.0;
  double lo = start;
  double hi = 2.0 * start;
  while (holds(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap)
      throw UnboundedRegion("region extends beyond " + std::to_string(cap) + " m");
  }
  // Short ranges also stop at 1e-9 relative, so sub-metre radii keep
  // their precision.
  return bisect_boundary(holds, lo, hi, std::min(tol, 1e-9 * lo));
}

}  // namespace wsnlink
