#pragma once

// Adaptive Simpson quadrature for scalar, complex and vector integrands.

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "fracspace/errors.hpp"

namespace fracspace {

struct QuadratureSettings {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
template <class V>
auto magnitude(const V& v) -> decltype(v.norm()) {
  return v.norm();
}

template <class F, class V>
V simpson_recurse(F& f, double a, double b, const V& fa, const V& fm, const V& fb, const V& whole,
                  double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (!(lm > a && rm < b)) {
    // A sliver a few ulps wide, e.g. between a partial sum and a branch point.
    if (magnitude(whole) <= tol) return whole;
    throw ConvergenceError("adaptive Simpson: interval [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] cannot be subdivided further");
  }
  const V flm = f(lm);
  const V frm = f(rm);
  const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const V delta = left + right - whole;
  if (magnitude(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= max_depth) {
    throw ConvergenceError("adaptive Simpson: tolerance not reached on [" + std::to_string(a) +
                           ", " + std::to_string(b) + "] at depth " + std::to_string(max_depth));
  }
  const V lhs = simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth);
  const V rhs = simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
  return lhs + rhs;
}

}  // namespace detail

/// Integral of f over [a, b] (a <= b) to within settings.abs_tol. The
/// interval is first cut into `panels` equal pieces, each integrated
/// adaptively with an equal share of the tolerance. Throws ConvergenceError
/// when a piece needs more than settings.max_depth bisections.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, const QuadratureSettings& settings,
                      int panels = 1) {
  using V = std::decay_t<decltype(f(a))>;
  if (!(settings.abs_tol > 0)) throw PreconditionError("quadrature abs_tol must be > 0");
  panels = panels < 1 ? 1 : panels;
  const double width = (b - a) / panels;
  const double tol = settings.abs_tol / panels;
  V total = f(a) * 0.0;
  V f_lo = f(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == panels ? b : a + width * (i + 1);
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const V f_mid = f(mid);
    const V f_hi = f(hi);
    const V whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    total = total + detail::simpson_recurse(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 0,
                                            settings.max_depth);
    f_lo = f_hi;
  }
  return total;
}

}  // namespace fracspace
