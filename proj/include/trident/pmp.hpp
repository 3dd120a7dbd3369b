#ifndef TRIDENT_PMP_HPP
#define TRIDENT_PMP_HPP

#include <array>
#include <vector>

#include <Eigen/Core>

#include "trident/configuration.hpp"
#include "trident/nilpotent.hpp"
#include "trident/types.hpp"

namespace trident {

/// Momenta (h1, ..., h7) paired with N1..N4, N12, N13, N14.
using FibreState = Vector7;

/// H = (h1^2 + h2^2 + h3^2 + h4^2) / 2.
double hamiltonian(const FibreState& h);

/// Constants of a normal extremal.
///   K > 0: h1 = C11 cos Kt + C12 sin Kt,
///          h2 = (C5/K)(C11 sin Kt - C12 cos Kt) + C13   (h3 with C6, C14; h4 with C7, C15)
///   K = 0: h1 = C11, h2 = C13, h3 = C14, h4 = C15 (C12 unused).
struct SolutionConstants
{
  double C5 = 0.0;
  double C6 = 0.0;
  double C7 = 0.0;
  double C11 = 0.0;
  double C12 = 0.0;
  double C13 = 0.0;
  double C14 = 0.0;
  double C15 = 0.0;

  double K() const;

  /// The constants of the solution of the fibre system through h0.
  static SolutionConstants from_initial_momenta(const FibreState& h0);

  /// C5 C13 + C6 C14 + C7 C15. The closed form solves the fibre system only
  /// when this vanishes; from_initial_momenta always produces such constants.
  double compatibility_residual() const;
};

/// dh/dt of the fibre system.
FibreState fibre_rhs(const FibreState& h);

/// dq/dt = h1 N1(q) + h2 N2 + h3 N3 + h4 N4 in the adapted chart.
Vector7 base_rhs(const AdaptedPoint& q, const FibreState& h);

FibreState closed_form_fibre(const SolutionConstants& c, double t);

/// Closed-form extremal from the adapted origin. x and the legs are explicit;
/// y1, y2, y3 come from adaptive Simpson quadrature of the base equations.
AdaptedPoint closed_form_base(const SolutionConstants& c, double t);

struct Trajectory
{
  Chart chart = Chart::adapted;
  std::vector<double> t;
  std::vector<Vector7> q;
  std::vector<FibreState> h;         // empty when momenta are not recorded
  std::vector<Eigen::Vector4d> u;    // empty when controls are not recorded

  std::size_t size() const { return t.size(); }
  bool has_momenta() const { return !h.empty(); }
  bool has_controls() const { return !u.empty(); }
};

struct IntegrationDiagnostics
{
  double energy_drift = 0.0;           // max |H(t) - H(0)|
  double energy_drift_rate = 0.0;      // energy_drift / T
  double casimir_drift = 0.0;          // max |h_k(t) - h_k(0)|, k = 5, 6, 7
  double dt = 0.0;                     // step actually used (T / ceil(T / dt))
  bool step_too_large = false;         // energy_drift_rate > 1e-6
};

struct ExtremalResult
{
  Trajectory trajectory;
  IntegrationDiagnostics diagnostics;
};

/// Closed-form extremal through q0 with the given constants, sampled like
/// integrate_extremal. Starts other than the origin use left translation.
Trajectory closed_form_trajectory(const SolutionConstants& c, const AdaptedPoint& q0, double T, double dt);

/// RK4 on the coupled 14-dimensional Hamiltonian system. Throws InvalidArgument
/// unless dt > 0 and T > 0.
ExtremalResult integrate_extremal(const FibreState& h0, const AdaptedPoint& q0, double T, double dt);

/// Rescales (h1..h4) to unit length. Throws ZeroHorizontalMomentum.
FibreState normalize_arclength(const FibreState& h0);

/// Closed-form solutions of the three reference examples (n = 1, 2, 3),
/// in the original chart. Throws InvalidArgument for other n.
Configuration example_solution(int n, double t);
SolutionConstants example_constants(int n);
FibreState example_momenta(int n);

enum class MotionSystem { nilpotent, original };

struct BracketMotionParams
{
  double amplitude = 0.4;
  double omega = 2.0 * M_PI / 50.0;
  int partner = 2;     // index i of the field N_i (or X_i) paired with the first one
  int cycles = 1;
  double steps_per_period = 2000.0;

  double period() const { return 2.0 * M_PI / omega; }
};

struct BracketMotionResult
{
  MotionSystem system = MotionSystem::nilpotent;
  Trajectory trajectory;   // adapted chart for the nilpotent system, original otherwise
  std::vector<std::array<Eigen::Vector2d, 3>> wheels;
  std::vector<std::array<Eigen::Vector2d, 3>> vertices;
  /// End minus start, both expressed in the adapted chart.
  Vector7 adapted_displacement = Vector7::Zero();
};

/// u1 = -A w sin(w t), u_i = A w cos(w t) for `cycles` periods, RK4 at
/// dt = period / steps_per_period. q_start may be given in either chart.
/// Throws InvalidArgument for bad parameters and SingularConfiguration when the
/// original frame degenerates along the way.
BracketMotionResult bracket_motion(const BracketMotionParams& params, MotionSystem system,
                                   const Configuration& q_start);

struct AmplitudeSweep
{
  std::vector<double> amplitudes;
  std::vector<double> differences;   // |original - nilpotent| adapted displacement
  std::vector<double> orders;        // log(d_k / d_{k+1}) / log(A_k / A_{k+1})
  double min_order() const;
};

/// Compares original and nilpotent displacements from q_start over a sequence of amplitudes.
AmplitudeSweep bracket_motion_sweep(const std::vector<double>& amplitudes, BracketMotionParams params,
                                    const Configuration& q_start);

}  // namespace trident

#endif  // TRIDENT_PMP_HPP
