#ifndef TRIDENT_NILPOTENT_HPP
#define TRIDENT_NILPOTENT_HPP

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "trident/configuration.hpp"
#include "trident/expr.hpp"
#include "trident/mechanism.hpp"

namespace trident {

/// A point in the adapted (privileged) chart (x, l1, l2, l3, y1, y2, y3).
struct AdaptedPoint
{
  Vector7 coords = Vector7::Zero();

  static AdaptedPoint origin() { return {}; }
  static AdaptedPoint from(double x, double l1, double l2, double l3, double y1, double y2, double y3)
  {
    AdaptedPoint p;
    p.coords << x, l1, l2, l3, y1, y2, y3;
    return p;
  }

  double x() const { return coords(0); }
  double l1() const { return coords(1); }
  double l2() const { return coords(2); }
  double l3() const { return coords(3); }
  double y1() const { return coords(4); }
  double y2() const { return coords(5); }
  double y3() const { return coords(6); }

  Configuration as_configuration() const { return {Chart::adapted, coords}; }
};

/// Elements of the nilpotent group N, identified with R^7 through the adapted chart.
using GroupElement = AdaptedPoint;

/// Throws ChartMismatch unless q is in the adapted chart.
AdaptedPoint adapted_point(const Configuration& q);

/// Affine change of chart:
///   y1 = -2x - 2 sqrt(3) y - 8 theta
///   y2 = 4/5 phi - 4/5 x + 8/5 theta
///   y3 = -2x + 2 sqrt(3) y - 8 theta
/// with x and the legs passed through. Throws ChartMismatch for adapted input.
AdaptedPoint to_adapted(const Configuration& q);

/// Inverse of to_adapted.
Configuration from_adapted(const AdaptedPoint& p);

/// Jacobian d(adapted)/d(original); constant because the change of chart is linear.
Matrix7 to_adapted_jacobian();

/// N1..N4 in the adapted chart.
std::array<VectorField, 4> nilpotent_frame();

/// N12 = d/dy1, N13 = d/dy2, N14 = d/dy3.
std::array<VectorField, 3> nilpotent_bracket_fields();

/// N1..N4, N12, N13, N14.
std::array<VectorField, 7> nilpotent_algebra_fields();

/// Numeric values of N1..N4 (columns) at p.
Frame nilpotent_frame_at(const Vector7& p);

/// Coordinates u of a tangent vector v at p in the frame N1..N4, i.e. the
/// controls realising v. `residual` receives |v - sum u_i N_i(p)|.
Eigen::Vector4d frame_controls(const Vector7& p, const Vector7& v, double* residual = nullptr);

GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& a);

/// Jacobian of p -> g * p, exact from the polynomial group law.
Matrix7 left_translation_jacobian(const GroupElement& g);

struct InvarianceReport
{
  bool passed = false;
  double max_residual = 0.0;
  int samples = 0;
};

/// Compares dL_g(X(p)) with X(g p) at random pairs (g, p) drawn from [-2, 2]^7.
InvarianceReport check_left_invariance(const VectorField& field, int samples, std::uint64_t seed = 0,
                                       double tol = 1e-9);

struct PathGeometryReport
{
  bool transversal = false;     // E and V intersect trivially
  bool v_closed = false;        // [V, V] lies in E + V
  bool nondegenerate = false;   // [E, V](q) leaves E + V when both sections are nonzero at q
  double min_transversal_sv = 0.0;
  double max_vv_residual = 0.0;
  double min_ev_escape = 0.0;
  int samples = 0;

  bool passed() const { return transversal && v_closed && nondegenerate; }
};

/// Randomised check of the generalized path geometry axioms for E = <N1>,
/// V = <N2, N3, N4>, using sections with random affine coefficient functions.
PathGeometryReport check_path_geometry_conditions(int samples, std::uint64_t seed = 0);

/// Pfaffian signature of the nilpotent distribution at p; its annihilator is
/// spanned by dy_k - c_k dx with c_k the dy_k coefficient of N1.
SignatureResult nilpotent_pfaffian_signature(const AdaptedPoint& p, double tol = 1e-9);

}  // namespace trident

#endif  // TRIDENT_NILPOTENT_HPP
