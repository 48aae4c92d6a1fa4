#pragma once

#include <algorithm>
#include <optional>

namespace qd::detail {

struct ScanResult {
  std::optional<double> root;  // smallest sign-change root found
  int sign_changes = 0;        // over the whole scan interval
};

// Bracket scan over [lo, hi] with the given step, then bisection of the
// first bracket to |hi - lo| <= tol. Counts every sign change seen so the
// caller can flag non-unique roots. f(lo) is expected to be nonzero; exact
// zeros at grid points count as roots.
template <class F>
ScanResult scan_bisect(F&& f, double lo, double hi, double step, double tol,
                       int max_iter) {
  ScanResult result;
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) {
    result.root = lo;
    result.sign_changes = 1;
  }

  std::optional<std::pair<double, double>> bracket;
  for (double x = lo + step; x_prev < hi; x += step) {
    x = std::min(x, hi);
    const double fx = f(x);
    const bool crossed = (f_prev < 0.0 && fx >= 0.0) ||
                         (f_prev > 0.0 && fx <= 0.0);
    if (crossed) {
      ++result.sign_changes;
      if (!bracket) bracket = {x_prev, x};
    }
    // step past an exact zero so a touch is not double counted
    f_prev = (fx == 0.0) ? (f_prev < 0.0 ? 1.0 : -1.0) : fx;
    x_prev = x;
    if (x >= hi) break;
  }

  if (!result.root && bracket) {
    auto [a, b] = *bracket;
    double fa = f(a);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = f(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fa < 0.0) == (fm < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    result.root = 0.5 * (a + b);
  }
  return result;
}

}  // namespace qd::detail
