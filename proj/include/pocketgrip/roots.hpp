#pragma once

#include <cmath>
#include <stdexcept>

namespace pocketgrip::roots {

/// Solves f(x) = 0 for an increasing f on [lo, hi] with f(lo) <= 0 <= f(hi).
///
/// Bisects until the bracket is within 10 % of its upper end, then takes
/// Newton steps, falling back to bisection whenever a step leaves the bracket.
/// Terminates when the bracket or the last step is below rel_tol * |x|.
template <class F, class DF>
double solve_increasing(F&& f, DF&& df, double lo, double hi, double rel_tol, int max_iter = 400) {
  if (!(lo <= hi)) throw std::invalid_argument("solve_increasing: empty bracket");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo > 0.0 || f_hi < 0.0) throw std::invalid_argument("solve_increasing: root not bracketed");
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  for (int i = 0; i < max_iter && (hi - lo) > 0.1 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    (fx < 0.0 ? lo : hi) = x;
    if (hi - lo <= rel_tol * std::abs(x)) return 0.5 * (lo + hi);

    const double slope = df(x);
    double next = (slope > 0.0) ? x - fx / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - x;
    x = next;
    if (std::abs(step) <= rel_tol * std::abs(x)) return x;
  }
  return x;
}

/// Narrows [lo, hi] where pred(lo) is false and pred(hi) is true until
/// hi - lo <= tol, and returns the true end.
template <class Pred>
double bisect_first_true(Pred&& pred, double lo, double hi, double tol, int max_iter = 200) {
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace pocketgrip::roots
