#ifndef TRIDENT_SYMMETRY_HPP
#define TRIDENT_SYMMETRY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trident/expr.hpp"
#include "trident/nilpotent.hpp"

namespace trident {

/// v1, v2, v3: the isotropy algebra so(3) of the origin. All three are linear
/// in (l, y) with x-dependent coefficients and vanish at the origin.
std::array<VectorField, 3> so3_generators();

/// a1 v1 + a2 v2 + a3 v3 with exact rational weights.
VectorField so3_combination(const Rational& a1, const Rational& a2, const Rational& a3);

/// w1, w2, w3, w4, w12, w13, w14: the nilpotent algebra acting simply transitively.
std::array<VectorField, 7> transitive_generators();

struct So3Table
{
  VectorField v1v2;
  VectorField v1v3;
  VectorField v2v3;
  bool closes = false;  // [v1,v2] = -v3, [v1,v3] = v2, [v2,v3] = -v1 structurally
};

So3Table so3_structure();

struct SymmetryReport
{
  std::string field_name;
  bool commutes_with_n1 = false;
  bool preserves_v = false;           // [v, N_j] has no N1 or bracket-direction part
  bool constant_coefficients = false;
  bool antisymmetric = false;         // induced matrix on (N2, N3, N4) is in so(3)
  /// action(j, k): coefficient of N_{k+2} in [v, N_{j+2}] (valid when constant).
  Eigen::Matrix3d action = Eigen::Matrix3d::Zero();
  /// Largest component of the offending residual over random sample points.
  double residual_norm = 0.0;
  VectorField residual = VectorField::zero(Chart::adapted);

  bool passed() const { return commutes_with_n1 && preserves_v && constant_coefficients && antisymmetric; }
};

/// Thrown by check_symmetry_conditions; carries the report with the residual field.
class NotASymmetry : public Error
{
public:
  explicit NotASymmetry(SymmetryReport report);
  const SymmetryReport& report() const { return report_; }

private:
  SymmetryReport report_;
};

/// Checks that v preserves E = <N1>, V = <N2, N3, N4> and the control metric.
/// Never throws on a failed check.
SymmetryReport inspect_symmetry(const VectorField& v, std::uint64_t seed = 0);

/// inspect_symmetry, throwing NotASymmetry when any condition fails.
SymmetryReport check_symmetry_conditions(const VectorField& v);

/// (x, k a1, k a2, k a3, x + sqrt(3)/4 x^2 + k a1, x + k a2, x - sqrt(3)/4 x^2 + k a3).
/// Throws ZeroCombination for a = 0.
AdaptedPoint fixed_point_set(const Eigen::Vector3d& a, double x, double k);

/// Time-t flow of the field by fixed-step RK4 (step at most dt; t may be negative).
AdaptedPoint symmetry_flow(const VectorField& v, const AdaptedPoint& p, double t, double dt);

struct TransitiveAlgebraReport
{
  bool closes = false;        // [w1, w_{k}] = w_{1k}, everything else commutes
  bool commutes_with_frame = false;
  int min_rank = 0;           // rank of the w values over sample points
  bool passed() const { return closes && commutes_with_frame && min_rank == 7; }
};

TransitiveAlgebraReport check_transitive_algebra(int samples, std::uint64_t seed = 0);

struct FlowInvarianceReport
{
  double max_horizontal_residual = 0.0;
  double length_before = 0.0;
  double length_after = 0.0;
  double relative_length_change = 0.0;
};

/// Pushes the sampled horizontal curve (points and velocities on a uniform
/// grid of spacing `time_step`) through the flow of v for time s and measures
/// how far the image leaves the distribution and how its length changes.
FlowInvarianceReport check_flow_invariance(const VectorField& v, const std::vector<Vector7>& points,
                                           const std::vector<Vector7>& velocities, double time_step, double s,
                                           double flow_dt = 1e-3);

}  // namespace trident

#endif  // TRIDENT_SYMMETRY_HPP
