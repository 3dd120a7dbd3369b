#ifndef TRIDENT_MECHANISM_HPP
#define TRIDENT_MECHANISM_HPP

#include <array>
#include <functional>

#include <Eigen/Core>

#include "trident/configuration.hpp"
#include "trident/expr.hpp"

namespace trident {

/// Fixed geometry of the root block: branch anchor angles relative to the heading.
/// The second branch sits at angle 0 and carries the revolute joint phi.
struct MechanismConstants
{
  static constexpr double alpha1 = -2.0 * M_PI / 3.0;
  static constexpr double alpha3 = 2.0 * M_PI / 3.0;
};

/// L = l1 + l3 + 2.
double leg_sum(const Configuration& q);

using PfaffMatrix = Eigen::Matrix<double, 3, 7>;
using Frame = Eigen::Matrix<double, 7, 4>;

/// Ground contact points of the three wheels. Throws ChartMismatch for adapted input.
std::array<Eigen::Vector2d, 3> wheel_positions(const Configuration& q);

/// Vertices of the root triangle where the legs are attached.
std::array<Eigen::Vector2d, 3> vertex_positions(const Configuration& q);

/// Rows are the no-slip constraint one-forms in the basis (dx, dy, dtheta, dphi, dl1, dl2, dl3).
PfaffMatrix pfaff_matrix(const Configuration& q);

/// Basis X1..X4 (columns) of the kernel of pfaff_matrix(q).
///
/// X2, X3, X4 are the leg fields d/dl1, d/dl2, d/dl3. X1 is gauged so that its
/// planar velocity has unit component along (sin theta, -cos theta), the body
/// direction perpendicular to the heading. On the slice x = y = 0, theta = pi/2
/// this is the field with unit d/dx coefficient.
///
/// Throws SingularConfiguration when l2 or L is within 1e-9 of zero.
Frame horizontal_frame(const Configuration& q);

/// Closed form of X1..X4 on the slice x = y = 0, theta = pi/2 (original chart).
/// Only the (phi, l1, l2, l3) dependence is retained, so the fields are valid
/// on the slice and brackets among them only need leg/phi derivatives.
std::array<VectorField, 4> slice_frame();

/// x = y = 0 and theta = pi/2 up to 1e-14.
bool on_slice(const Configuration& q);

using NumericField = std::function<Vector7(const Vector7&)>;

/// Derivative of `field` at `q` along `direction`: central differences with
/// steps h and h/2 combined by Richardson extrapolation.
Vector7 directional_derivative(const NumericField& field, const Vector7& q, const Vector7& direction, double h = 1e-4);

/// [X,Y](q) = DY(q) X(q) - DX(q) Y(q) by finite differences.
Vector7 numeric_bracket(const NumericField& x, const NumericField& y, const Vector7& q, double h = 1e-4);

/// Rank with singular values below rel_tol * sigma_max counted as zero.
int numeric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

struct AnalysisOptions
{
  double rank_tolerance = 1e-9;
  double fd_step = 1e-4;
  double eigen_tolerance = 1e-9;
};

enum class BracketMethod
{
  symbolic_slice,
  finite_difference,
};

/// Brackets of the horizontal frame in the order [X1,X2], [X1,X3], [X1,X4], [X2,X3], [X2,X4], [X3,X4].
using FrameBrackets = std::array<Vector7, 6>;

FrameBrackets frame_brackets(const Configuration& q, const AnalysisOptions& options = {},
                             BracketMethod* method_used = nullptr);

struct ControllabilityResult
{
  /// Columns X1, X2, X3, X4, X12, X13, X14.
  Matrix7 gbar;
  double det_gbar = 0.0;
  bool det_nonzero = false;
  int d1 = 0;
  int d2 = 0;
  BracketMethod method = BracketMethod::finite_difference;
};

ControllabilityResult controllability(const Configuration& q, const AnalysisOptions& options = {});

struct DynamicPairResult
{
  int rank_v0 = 0;
  int rank_v1 = 0;
  bool transversal = false;
};

/// Regularity of the dynamic pair (f X1, <X2, X3, X4>) for a nonzero constant f.
DynamicPairResult check_dynamic_pair(const Configuration& q, double f, const AnalysisOptions& options = {});

/// Signature of the Pfaffian quadratic form. Stored with positive >= negative
/// since (p, r) and (r, p) describe the same form.
struct SignatureResult
{
  int positive = 0;
  int negative = 0;
  double tolerance = 0.0;
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();

  friend bool operator==(const SignatureResult& a, const SignatureResult& b)
  {
    return a.positive == b.positive && a.negative == b.negative;
  }
};

/// Signature of c -> Pf(sum_k c_k A_k) where (A_k)_ij = -mu_k([X_i, X_j]).
/// `annihilator` rows are mu_1..mu_3; `brackets` follow the FrameBrackets order.
/// Eigenvalues below tol * max(1, sum_k |A_k|_F^2) count as zero; the Pfaffian
/// is quadratic in the bracket entries, which fixes the scale.
SignatureResult dual_curvature_signature(const PfaffMatrix& annihilator, const FrameBrackets& brackets, double tol);

/// Throws DegenerateGrowth when the growth vector at q is not (4, 7).
SignatureResult pfaffian_signature(const Configuration& q, const AnalysisOptions& options = {});

}  // namespace trident

#endif  // TRIDENT_MECHANISM_HPP
