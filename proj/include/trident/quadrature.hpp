#ifndef TRIDENT_QUADRATURE_HPP
#define TRIDENT_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace trident {

namespace detail {

inline double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                              double fb, double whole, double tol, int depth)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                               int max_depth = 50)
{
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace trident

#endif  // TRIDENT_QUADRATURE_HPP
