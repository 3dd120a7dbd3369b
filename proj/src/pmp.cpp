#include "trident/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trident/errors.hpp"
#include "trident/mechanism.hpp"
#include "trident/ode.hpp"
#include "trident/quadrature.hpp"

namespace trident {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt10 = std::sqrt(10.0);
const double kSqrt30 = std::sqrt(30.0);

// Sign of the x term in the dy_k coefficient of N1: +sqrt(3)/2, 0, -sqrt(3)/2.
constexpr std::array<double, 3> kXSign{1.0, 0.0, -1.0};

// Longest interval handed to a single adaptive Simpson call; keeps the initial
// three-point estimate from aliasing with the oscillation of the integrand.
constexpr double kQuadraturePanel = 0.25;

struct ClosedFormHorizontal
{
  double x;
  Eigen::Vector3d legs;
  double h1;
};

ClosedFormHorizontal horizontal_part(const SolutionConstants& c, double t)
{
  const double k = c.K();
  const std::array<double, 3> cv{c.C5, c.C6, c.C7};
  const std::array<double, 3> affine{c.C13, c.C14, c.C15};
  ClosedFormHorizontal out{};
  if (k == 0.0) {
    out.x = c.C11 * t;
    for (int i = 0; i < 3; ++i) out.legs(i) = affine[static_cast<std::size_t>(i)] * t;
    out.h1 = c.C11;
    return out;
  }
  const double s = std::sin(k * t);
  const double co = std::cos(k * t);
  out.x = (c.C11 / k) * s - (c.C12 / k) * co + c.C12 / k;
  for (int i = 0; i < 3; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.legs(i) = (cv[ui] / (k * k)) * (c.C11 - c.C11 * co - c.C12 * s) + affine[ui] * t;
  }
  out.h1 = c.C11 * co + c.C12 * s;
  return out;
}

double y_integrand(const SolutionConstants& c, int k, double s)
{
  const ClosedFormHorizontal p = horizontal_part(c, s);
  return (1.0 + kXSign[static_cast<std::size_t>(k)] * 0.5 * kSqrt3 * p.x - p.legs(k)) * p.h1;
}

Eigen::Vector3d y_increment(const SolutionConstants& c, double a, double b)
{
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  const std::size_t panels = step_count(b - a, kQuadraturePanel);
  const double width = (b - a) / static_cast<double>(panels);
  for (int k = 0; k < 3; ++k) {
    const auto f = [&c, k](double s) { return y_integrand(c, k, s); };
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + width * static_cast<double>(p);
      const double hi = p + 1 == panels ? b : lo + width;
      out(k) += adaptive_simpson(f, lo, hi, 1e-10 / static_cast<double>(panels));
    }
  }
  return out;
}

AdaptedPoint assemble(const SolutionConstants& c, double t, const Eigen::Vector3d& y)
{
  const ClosedFormHorizontal p = horizontal_part(c, t);
  return AdaptedPoint::from(p.x, p.legs(0), p.legs(1), p.legs(2), y(0), y(1), y(2));
}

std::size_t grid_steps(double T, double dt)
{
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(T > 0.0)) throw InvalidArgument("T must be positive");
  return step_count(T, dt);
}

}  // namespace

double hamiltonian(const FibreState& h) { return 0.5 * h.head<4>().squaredNorm(); }

double SolutionConstants::K() const { return std::sqrt(C5 * C5 + C6 * C6 + C7 * C7); }

SolutionConstants SolutionConstants::from_initial_momenta(const FibreState& h0)
{
  SolutionConstants c;
  c.C5 = h0(4);
  c.C6 = h0(5);
  c.C7 = h0(6);
  c.C11 = h0(0);
  const double k = c.K();
  if (k == 0.0) {
    c.C13 = h0(1);
    c.C14 = h0(2);
    c.C15 = h0(3);
    return c;
  }
  // dh1/dt(0) = K C12 = -(h5 h2 + h6 h3 + h7 h4)(0).
  c.C12 = -(c.C5 * h0(1) + c.C6 * h0(2) + c.C7 * h0(3)) / k;
  c.C13 = h0(1) + (c.C5 / k) * c.C12;
  c.C14 = h0(2) + (c.C6 / k) * c.C12;
  c.C15 = h0(3) + (c.C7 / k) * c.C12;
  return c;
}

double SolutionConstants::compatibility_residual() const { return C5 * C13 + C6 * C14 + C7 * C15; }

FibreState fibre_rhs(const FibreState& h)
{
  FibreState d = FibreState::Zero();
  d(0) = -h(4) * h(1) - h(5) * h(2) - h(6) * h(3);
  d(1) = h(4) * h(0);
  d(2) = h(5) * h(0);
  d(3) = h(6) * h(0);
  return d;
}

Vector7 base_rhs(const AdaptedPoint& q, const FibreState& h)
{
  const double x = q.x();
  const double h1 = h(0);
  Vector7 d;
  d << h1, h(1), h(2), h(3), (1.0 + 0.5 * kSqrt3 * x - q.l1()) * h1, (1.0 - q.l2()) * h1,
      (1.0 - 0.5 * kSqrt3 * x - q.l3()) * h1;
  return d;
}

FibreState closed_form_fibre(const SolutionConstants& c, double t)
{
  FibreState h = FibreState::Zero();
  h(4) = c.C5;
  h(5) = c.C6;
  h(6) = c.C7;
  const double k = c.K();
  if (k == 0.0) {
    h(0) = c.C11;
    h(1) = c.C13;
    h(2) = c.C14;
    h(3) = c.C15;
    return h;
  }
  const double s = std::sin(k * t);
  const double co = std::cos(k * t);
  const double osc = c.C11 * s - c.C12 * co;
  h(0) = c.C11 * co + c.C12 * s;
  h(1) = (c.C5 / k) * osc + c.C13;
  h(2) = (c.C6 / k) * osc + c.C14;
  h(3) = (c.C7 / k) * osc + c.C15;
  return h;
}

AdaptedPoint closed_form_base(const SolutionConstants& c, double t)
{
  return assemble(c, t, y_increment(c, 0.0, t));
}

Trajectory closed_form_trajectory(const SolutionConstants& c, const AdaptedPoint& q0, double T, double dt)
{
  const std::size_t n = grid_steps(T, dt);
  const double h = T / static_cast<double>(n);
  Trajectory traj;
  traj.chart = Chart::adapted;
  Eigen::Vector3d y = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = h * static_cast<double>(i);
    if (i > 0) y += y_increment(c, h * static_cast<double>(i - 1), t);
    const FibreState m = closed_form_fibre(c, t);
    traj.t.push_back(t);
    traj.q.push_back(group_mul(q0, assemble(c, t, y)).coords);
    traj.h.push_back(m);
    traj.u.emplace_back(m.head<4>());
  }
  return traj;
}

ExtremalResult integrate_extremal(const FibreState& h0, const AdaptedPoint& q0, double T, double dt)
{
  const std::size_t n = grid_steps(T, dt);
  const double step = T / static_cast<double>(n);
  using State = Eigen::Matrix<double, 14, 1>;
  const auto rhs = [](double, const State& s) -> State {
    State d;
    const FibreState h = s.tail<7>();
    d.head<7>() = base_rhs(AdaptedPoint{s.head<7>()}, h);
    d.tail<7>() = fibre_rhs(h);
    return d;
  };

  ExtremalResult result;
  Trajectory& traj = result.trajectory;
  traj.chart = Chart::adapted;
  traj.t.reserve(n + 1);
  traj.q.reserve(n + 1);
  traj.h.reserve(n + 1);
  traj.u.reserve(n + 1);

  State s;
  s.head<7>() = q0.coords;
  s.tail<7>() = h0;
  const double energy0 = hamiltonian(h0);
  IntegrationDiagnostics& diag = result.diagnostics;
  diag.dt = step;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = step * static_cast<double>(i);
    if (i > 0) s = rk4_step(rhs, t - step, s, step);
    const FibreState h = s.tail<7>();
    traj.t.push_back(t);
    traj.q.emplace_back(s.head<7>());
    traj.h.push_back(h);
    traj.u.emplace_back(h.head<4>());
    diag.energy_drift = std::max(diag.energy_drift, std::abs(hamiltonian(h) - energy0));
    diag.casimir_drift = std::max(diag.casimir_drift, (h.tail<3>() - h0.tail<3>()).lpNorm<Eigen::Infinity>());
  }
  diag.energy_drift_rate = diag.energy_drift / T;
  diag.step_too_large = diag.energy_drift_rate > 1e-6;
  return result;
}

FibreState normalize_arclength(const FibreState& h0)
{
  const double norm = h0.head<4>().norm();
  if (norm == 0.0) throw ZeroHorizontalMomentum("horizontal momenta (h1, h2, h3, h4) vanish");
  FibreState h = h0;
  h.head<4>() /= norm;
  return h;
}

Configuration example_solution(int n, double t)
{
  const double s = std::sin(t);
  const double c = std::cos(t);
  switch (n) {
    case 1:
      return Configuration::original(7.0 * t / 10.0, (7.0 * kSqrt3 / 600.0 - 49.0 / 800.0) * t * t,
                                     21.0 * t * t / 1600.0 - 21.0 * t / 80.0, -49.0 * t * t / 200.0 + 21.0 * t / 10.0,
                                     t / 2.0, t / 2.0, t / 10.0);
    case 2: {
      const double x = 0.5 * s + 0.5 * c - 0.5;
      const double y = -kSqrt3 / 48.0 * (kSqrt3 * (s - 1.0) * (c - 1.0) + c * c + t * c + (t - 2.0) * s + t - 1.0);
      const double theta = -c * c / 64.0 + (t - 10.0) / 64.0 * c + (t - 12.0) / 64.0 * s - t / 64.0 + 11.0 / 64.0;
      const double phi = c * c / 32.0 + (36.0 - 11.0 * t) / 32.0 * c + (58.0 - 11.0 * t) / 32.0 * s + t / 32.0 - 37.0 / 32.0;
      const double l1 = 0.5 * s - 0.5 * c + 0.5;
      return Configuration::original(x, y, theta, phi, l1, t / 2.0, t / 2.0);
    }
    case 3: {
      const double x = -kSqrt10 / 4.0 * s;
      const double y = kSqrt30 / 192.0 * (1.0 - t * s - c) + 5.0 / 64.0 * c * c - 5.0 / 96.0 * s * c - 5.0 * t / 96.0 +
                       5.0 / 48.0 * s - 5.0 / 64.0;
      const double theta = -3.0 * kSqrt10 / 256.0 * ((t - 8.0) * s + c - 1.0);
      const double phi = 13.0 * kSqrt3 / 384.0 *
                         (((t - 96.0 / 13.0) * s + c - 1.0) * kSqrt10 * kSqrt3 + (100.0 / 13.0 - 50.0 / 13.0 * c) * s -
                          50.0 / 13.0 * t);
      const double l1 = kSqrt30 / 12.0 * (c - 1.0) + t / 2.0;
      const double l23 = kSqrt30 / 12.0 * (1.0 - c) + t / 4.0;
      return Configuration::original(x, y, theta, phi, l1, l23, l23);
    }
    default:
      throw InvalidArgument("example index must be 1, 2 or 3, got " + std::to_string(n));
  }
}

SolutionConstants example_constants(int n)
{
  SolutionConstants c;
  switch (n) {
    case 1:
      c.C11 = 0.7;
      c.C13 = 0.5;
      c.C14 = 0.5;
      c.C15 = 0.1;
      return c;
    case 2:
      c.C5 = 1.0;
      c.C11 = 0.5;
      c.C12 = -0.5;
      c.C14 = 0.5;
      c.C15 = 0.5;
      return c;
    case 3:
      c.C5 = kSqrt3 / 3.0;
      c.C6 = -kSqrt3 / 3.0;
      c.C7 = -kSqrt3 / 3.0;
      c.C11 = -kSqrt10 / 4.0;
      c.C13 = 0.5;
      c.C14 = 0.25;
      c.C15 = 0.25;
      return c;
    default:
      throw InvalidArgument("example index must be 1, 2 or 3, got " + std::to_string(n));
  }
}

FibreState example_momenta(int n) { return closed_form_fibre(example_constants(n), 0.0); }

BracketMotionResult bracket_motion(const BracketMotionParams& params, MotionSystem system,
                                   const Configuration& q_start)
{
  if (!(params.amplitude > 0.0)) throw InvalidArgument("amplitude must be positive");
  if (!(params.omega > 0.0)) throw InvalidArgument("angular speed must be positive");
  if (params.partner < 2 || params.partner > 4) throw InvalidArgument("partner index must be 2, 3 or 4");
  if (params.cycles < 1) throw InvalidArgument("cycle count must be at least 1");
  if (!(params.steps_per_period >= 1.0)) throw InvalidArgument("steps per period must be at least 1");

  const double a = params.amplitude;
  const double w = params.omega;
  const int partner = params.partner - 1;
  const auto controls = [a, w, partner](double t) {
    Eigen::Vector4d u = Eigen::Vector4d::Zero();
    u(0) = -a * w * std::sin(w * t);
    u(partner) = a * w * std::cos(w * t);
    return u;
  };

  BracketMotionResult result;
  result.system = system;
  Vector7 start;
  if (system == MotionSystem::nilpotent) {
    start = q_start.chart() == Chart::adapted ? q_start.coords() : to_adapted(q_start).coords;
    result.trajectory.chart = Chart::adapted;
  } else {
    start = q_start.chart() == Chart::original ? q_start.coords() : from_adapted(AdaptedPoint{q_start.coords()}).coords();
    result.trajectory.chart = Chart::original;
  }

  const auto rhs = [&](double t, const Vector7& q) -> Vector7 {
    const Eigen::Vector4d u = controls(t);
    if (system == MotionSystem::nilpotent) return nilpotent_frame_at(q) * u;
    return horizontal_frame(Configuration(Chart::original, q)) * u;
  };

  const auto n = static_cast<std::size_t>(std::llround(params.steps_per_period * params.cycles));
  const double h = params.period() * params.cycles / static_cast<double>(n);
  Vector7 q = start;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = h * static_cast<double>(i);
    if (i > 0) q = rk4_step(rhs, t - h, q, h);
    result.trajectory.t.push_back(t);
    result.trajectory.q.push_back(q);
    result.trajectory.u.push_back(controls(t));
    const Configuration physical = system == MotionSystem::nilpotent ? from_adapted(AdaptedPoint{q})
                                                                     : Configuration(Chart::original, q);
    result.wheels.push_back(wheel_positions(physical));
    result.vertices.push_back(vertex_positions(physical));
  }

  if (system == MotionSystem::nilpotent) {
    result.adapted_displacement = q - start;
  } else {
    result.adapted_displacement = to_adapted(Configuration(Chart::original, q)).coords -
                                  to_adapted(Configuration(Chart::original, start)).coords;
  }
  return result;
}

double AmplitudeSweep::min_order() const
{
  if (orders.empty()) return 0.0;
  return *std::min_element(orders.begin(), orders.end());
}

AmplitudeSweep bracket_motion_sweep(const std::vector<double>& amplitudes, BracketMotionParams params,
                                    const Configuration& q_start)
{
  AmplitudeSweep sweep;
  sweep.amplitudes = amplitudes;
  for (double a : amplitudes) {
    params.amplitude = a;
    const Vector7 nil = bracket_motion(params, MotionSystem::nilpotent, q_start).adapted_displacement;
    const Vector7 orig = bracket_motion(params, MotionSystem::original, q_start).adapted_displacement;
    sweep.differences.push_back((orig - nil).norm());
  }
  for (std::size_t k = 0; k + 1 < amplitudes.size(); ++k)
    sweep.orders.push_back(std::log(sweep.differences[k] / sweep.differences[k + 1]) /
                           std::log(amplitudes[k] / amplitudes[k + 1]));
  return sweep;
}

}  // namespace trident
