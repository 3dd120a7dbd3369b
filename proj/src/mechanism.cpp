#include "trident/mechanism.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "trident/errors.hpp"

namespace trident {

namespace {

constexpr double kSingularThreshold = 1e-9;

constexpr int kTheta = 2;
constexpr int kPhi = 3;
constexpr int kL1 = 4;
constexpr int kL2 = 5;
constexpr int kL3 = 6;

void require_original(const Configuration& q, const char* what)
{
  if (q.chart() != Chart::original)
    throw ChartMismatch(std::string(what) + " expects a configuration in the original chart");
}

void require_regular(const Configuration& q)
{
  if (std::abs(q[kL2]) < kSingularThreshold) throw SingularConfiguration("leg length l2 vanishes");
  if (std::abs(leg_sum(q)) < kSingularThreshold) throw SingularConfiguration("L = l1 + l3 + 2 vanishes");
}

}  // namespace

double leg_sum(const Configuration& q) { return q.legs()(0) + q.legs()(2) + 2.0; }

std::array<Eigen::Vector2d, 3> wheel_positions(const Configuration& q)
{
  require_original(q, "wheel_positions");
  const double x = q[0];
  const double y = q[1];
  const double theta = q[kTheta];
  const double phi = q[kPhi];
  auto rigid_leg = [&](double alpha, double len) {
    return Eigen::Vector2d(x + (1.0 + len) * std::cos(theta + alpha), y + (1.0 + len) * std::sin(theta + alpha));
  };
  const Eigen::Vector2d w2(x + std::cos(theta) + q[kL2] * std::cos(theta + phi),
                           y + std::sin(theta) + q[kL2] * std::sin(theta + phi));
  return {rigid_leg(MechanismConstants::alpha1, q[kL1]), w2, rigid_leg(MechanismConstants::alpha3, q[kL3])};
}

std::array<Eigen::Vector2d, 3> vertex_positions(const Configuration& q)
{
  require_original(q, "vertex_positions");
  const double theta = q[kTheta];
  auto vertex = [&](double alpha) {
    return Eigen::Vector2d(q[0] + std::cos(theta + alpha), q[1] + std::sin(theta + alpha));
  };
  return {vertex(MechanismConstants::alpha1), vertex(0.0), vertex(MechanismConstants::alpha3)};
}

PfaffMatrix pfaff_matrix(const Configuration& q)
{
  require_original(q, "pfaff_matrix");
  const double theta = q[kTheta];
  const double phi = q[kPhi];
  const double a1 = theta + MechanismConstants::alpha1;
  const double a3 = theta + MechanismConstants::alpha3;
  PfaffMatrix m = PfaffMatrix::Zero();
  m.row(0).head<4>() << -std::sin(a1), std::cos(a1), 1.0 + q[kL1], 0.0;
  m.row(1).head<4>() << -std::sin(theta + phi), std::cos(theta + phi), std::cos(phi) + q[kL2], q[kL2];
  m.row(2).head<4>() << -std::sin(a3), std::cos(a3), 1.0 + q[kL3], 0.0;
  return m;
}

Frame horizontal_frame(const Configuration& q)
{
  require_original(q, "horizontal_frame");
  require_regular(q);
  const PfaffMatrix m = pfaff_matrix(q);
  const double theta = q[kTheta];

  Eigen::Matrix4d system;
  system.topRows<3>() = m.leftCols<4>();
  system.row(3) << std::sin(theta), -std::cos(theta), 0.0, 0.0;
  const Eigen::Vector4d rhs(0.0, 0.0, 0.0, 1.0);
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(system);
  if (!lu.isInvertible()) throw SingularConfiguration("gauged constraint system is singular");

  Frame frame = Frame::Zero();
  frame.col(0).head<4>() = lu.solve(rhs);
  frame(kL1, 1) = 1.0;
  frame(kL2, 2) = 1.0;
  frame(kL3, 3) = 1.0;
  return frame;
}

std::array<VectorField, 4> slice_frame()
{
  const Expr phi = Expr::variable(kPhi);
  const Expr l1 = Expr::variable(kL1);
  const Expr l2 = Expr::variable(kL2);
  const Expr l3 = Expr::variable(kL3);
  const Expr one = Expr::integer(1);
  const Expr three = Expr::integer(3);
  const Expr s3 = Expr::sqrt3();
  const Expr big_l = l1 + l3 + Expr::integer(2);

  std::array<Expr, 7> x1{};
  x1[0] = one;
  x1[1] = (l1 - l3) * s3 / (three * big_l);
  x1[2] = -(one / big_l);
  x1[3] = (Expr::sin(phi) * s3 * (l1 - l3) + three * Expr::cos(phi) * (big_l + one) + three * l2) / (three * l2 * big_l);

  return {VectorField(Chart::original, x1, "X1"), VectorField::coordinate(Chart::original, kL1).named("X2"),
          VectorField::coordinate(Chart::original, kL2).named("X3"),
          VectorField::coordinate(Chart::original, kL3).named("X4")};
}

bool on_slice(const Configuration& q)
{
  return q.chart() == Chart::original && std::abs(q[0]) < 1e-14 && std::abs(q[1]) < 1e-14 &&
         std::abs(q[kTheta] - M_PI / 2.0) < 1e-14;
}

Vector7 directional_derivative(const NumericField& field, const Vector7& q, const Vector7& direction, double h)
{
  const double length = direction.norm();
  if (length == 0.0) return Vector7::Zero();
  const Vector7 u = direction / length;
  auto central = [&](double step) -> Vector7 { return (field(q + step * u) - field(q - step * u)) / (2.0 * step); };
  const Vector7 coarse = central(h);
  const Vector7 fine = central(h / 2.0);
  return length * (4.0 * fine - coarse) / 3.0;
}

Vector7 numeric_bracket(const NumericField& x, const NumericField& y, const Vector7& q, double h)
{
  return directional_derivative(y, q, x(q), h) - directional_derivative(x, q, y(q), h);
}

int numeric_rank(const Eigen::MatrixXd& m, double rel_tol)
{
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

namespace {

constexpr std::array<std::array<int, 2>, 6> kBracketPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

const std::array<VectorField, 6>& slice_brackets()
{
  static const std::array<VectorField, 6> brackets = [] {
    const auto frame = slice_frame();
    std::array<VectorField, 6> out{VectorField::zero(Chart::original), VectorField::zero(Chart::original),
                                   VectorField::zero(Chart::original), VectorField::zero(Chart::original),
                                   VectorField::zero(Chart::original), VectorField::zero(Chart::original)};
    for (std::size_t k = 0; k < kBracketPairs.size(); ++k)
      out[k] = lie_bracket(frame[static_cast<std::size_t>(kBracketPairs[k][0])],
                           frame[static_cast<std::size_t>(kBracketPairs[k][1])]);
    return out;
  }();
  return brackets;
}

}  // namespace

FrameBrackets frame_brackets(const Configuration& q, const AnalysisOptions& options, BracketMethod* method_used)
{
  require_original(q, "frame_brackets");
  require_regular(q);
  FrameBrackets out;
  if (on_slice(q)) {
    const auto& symbolic = slice_brackets();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = eval_field(symbolic[k], q.coords());
    if (method_used) *method_used = BracketMethod::symbolic_slice;
    return out;
  }
  std::array<NumericField, 4> fields;
  for (int i = 0; i < 4; ++i)
    fields[static_cast<std::size_t>(i)] = [i](const Vector7& p) -> Vector7 {
      return horizontal_frame(Configuration(Chart::original, p)).col(i);
    };
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = numeric_bracket(fields[static_cast<std::size_t>(kBracketPairs[k][0])],
                             fields[static_cast<std::size_t>(kBracketPairs[k][1])], q.coords(), options.fd_step);
  if (method_used) *method_used = BracketMethod::finite_difference;
  return out;
}

ControllabilityResult controllability(const Configuration& q, const AnalysisOptions& options)
{
  const Frame frame = horizontal_frame(q);
  ControllabilityResult result;
  const FrameBrackets brackets = frame_brackets(q, options, &result.method);

  result.gbar.leftCols<4>() = frame;
  for (int k = 0; k < 3; ++k) result.gbar.col(4 + k) = brackets[static_cast<std::size_t>(k)];
  result.det_gbar = result.gbar.determinant();

  Eigen::MatrixXd delta2(7, 10);
  delta2.leftCols<4>() = frame;
  for (int k = 0; k < 6; ++k) delta2.col(4 + k) = brackets[static_cast<std::size_t>(k)];
  result.d1 = numeric_rank(frame, options.rank_tolerance);
  result.d2 = numeric_rank(delta2, options.rank_tolerance);
  result.det_nonzero = numeric_rank(result.gbar, options.rank_tolerance) == 7;
  return result;
}

DynamicPairResult check_dynamic_pair(const Configuration& q, double f, const AnalysisOptions& options)
{
  if (f == 0.0) throw InvalidArgument("dynamic pair drift factor must be nonzero");
  const Frame frame = horizontal_frame(q);
  const FrameBrackets brackets = frame_brackets(q, options);

  Eigen::MatrixXd v1(7, 6);
  v1.leftCols<3>() = frame.rightCols<3>();
  for (int k = 0; k < 3; ++k) v1.col(3 + k) = f * brackets[static_cast<std::size_t>(k)];
  Eigen::MatrixXd with_drift(7, 7);
  with_drift.leftCols<6>() = v1;
  with_drift.col(6) = f * frame.col(0);

  DynamicPairResult result;
  result.rank_v0 = numeric_rank(frame.rightCols<3>(), options.rank_tolerance);
  result.rank_v1 = numeric_rank(v1, options.rank_tolerance);
  result.transversal = numeric_rank(with_drift, options.rank_tolerance) == 7 && result.rank_v1 == 6;
  return result;
}

namespace {

double pfaffian(const Eigen::Matrix4d& a) { return a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2); }

}  // namespace

SignatureResult dual_curvature_signature(const PfaffMatrix& annihilator, const FrameBrackets& brackets, double tol)
{
  std::array<Eigen::Matrix4d, 3> forms;
  double scale = 0.0;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
    for (std::size_t b = 0; b < kBracketPairs.size(); ++b) {
      const int i = kBracketPairs[b][0];
      const int j = kBracketPairs[b][1];
      const double value = -annihilator.row(k).dot(brackets[b]);
      a(i, j) = value;
      a(j, i) = -value;
    }
    forms[static_cast<std::size_t>(k)] = a;
    scale += a.squaredNorm();
  }

  // Polarisation of the quadratic form c -> Pf(sum c_k A_k).
  Eigen::Matrix3d quadratic;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const auto& ak = forms[static_cast<std::size_t>(k)];
      const auto& al = forms[static_cast<std::size_t>(l)];
      quadratic(k, l) = 0.5 * (pfaffian(ak + al) - pfaffian(ak) - pfaffian(al));
    }
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(quadratic);
  SignatureResult result;
  result.eigenvalues = eig.eigenvalues();
  result.tolerance = tol * std::max(1.0, scale);
  int pos = 0;
  int neg = 0;
  for (int i = 0; i < 3; ++i) {
    if (result.eigenvalues(i) > result.tolerance) ++pos;
    if (result.eigenvalues(i) < -result.tolerance) ++neg;
  }
  result.positive = std::max(pos, neg);
  result.negative = std::min(pos, neg);
  return result;
}

SignatureResult pfaffian_signature(const Configuration& q, const AnalysisOptions& options)
{
  const ControllabilityResult ctrl = controllability(q, options);
  if (ctrl.d2 < 7) throw DegenerateGrowth("growth vector is not (4, 7) at this configuration");
  return dual_curvature_signature(pfaff_matrix(q), frame_brackets(q, options), options.eigen_tolerance);
}

}  // namespace trident
