#ifndef TRIDENT_ODE_HPP
#define TRIDENT_ODE_HPP

#include <cmath>
#include <cstddef>

namespace trident {

/// One classical Runge-Kutta step of size h for y' = f(t, y).
template <typename State, typename Rhs>
State rk4_step(const Rhs& f, double t, const State& y, double h)
{
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of uniform steps covering |span| with steps no longer than dt.
inline std::size_t step_count(double span, double dt)
{
  const double n = std::ceil(std::abs(span) / dt - 1e-12);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

}  // namespace trident

#endif  // TRIDENT_ODE_HPP
