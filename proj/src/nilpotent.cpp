#include "trident/nilpotent.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "trident/errors.hpp"

namespace trident {

namespace {

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

AdaptedPoint adapted_point(const Configuration& q)
{
  if (q.chart() != Chart::adapted) throw ChartMismatch("expected a configuration in the adapted chart");
  return AdaptedPoint{q.coords()};
}

AdaptedPoint to_adapted(const Configuration& q)
{
  if (q.chart() != Chart::original) throw ChartMismatch("to_adapted expects the original chart");
  const double x = q[0];
  const double y = q[1];
  const double theta = q[2];
  const double phi = q[3];
  return AdaptedPoint::from(x, q[4], q[5], q[6], -2.0 * x - 2.0 * kSqrt3 * y - 8.0 * theta,
                            0.8 * phi - 0.8 * x + 1.6 * theta, -2.0 * x + 2.0 * kSqrt3 * y - 8.0 * theta);
}

Configuration from_adapted(const AdaptedPoint& p)
{
  const double x = p.x();
  const double phi = 1.25 * p.y2() + 1.5 * x + (p.y1() + p.y3()) / 8.0;
  const double theta = -(p.y1() + p.y3()) / 16.0 - 0.25 * x;
  const double y = -(kSqrt3 / 12.0) * (p.y1() - p.y3());
  return Configuration::original(x, y, theta, phi, p.l1(), p.l2(), p.l3());
}

Matrix7 to_adapted_jacobian()
{
  Matrix7 j = Matrix7::Zero();
  j(0, 0) = 1.0;
  j(1, 4) = 1.0;
  j(2, 5) = 1.0;
  j(3, 6) = 1.0;
  j.row(4).head<4>() << -2.0, -2.0 * kSqrt3, -8.0, 0.0;
  j.row(5).head<4>() << -0.8, 0.0, 1.6, 0.8;
  j.row(6).head<4>() << -2.0, 2.0 * kSqrt3, -8.0, 0.0;
  return j;
}

std::array<VectorField, 4> nilpotent_frame()
{
  const Expr x = Expr::variable(0);
  const Expr l1 = Expr::variable(1);
  const Expr l2 = Expr::variable(2);
  const Expr l3 = Expr::variable(3);
  const Expr one = Expr::integer(1);
  const Expr half_root3 = Expr(ExactConstant(0, Rational(1, 2)));

  std::array<Expr, 7> n1{};
  n1[0] = one;
  n1[4] = -(-(half_root3 * x) + l1 - one);
  n1[5] = -(l2 - one);
  n1[6] = -(half_root3 * x + l3 - one);
  return {simplify(VectorField(Chart::adapted, n1, "N1")), VectorField::coordinate(Chart::adapted, 1).named("N2"),
          VectorField::coordinate(Chart::adapted, 2).named("N3"),
          VectorField::coordinate(Chart::adapted, 3).named("N4")};
}

std::array<VectorField, 3> nilpotent_bracket_fields()
{
  return {VectorField::coordinate(Chart::adapted, 4).named("N12"),
          VectorField::coordinate(Chart::adapted, 5).named("N13"),
          VectorField::coordinate(Chart::adapted, 6).named("N14")};
}

std::array<VectorField, 7> nilpotent_algebra_fields()
{
  const auto n = nilpotent_frame();
  const auto b = nilpotent_bracket_fields();
  return {n[0], n[1], n[2], n[3], b[0], b[1], b[2]};
}

Frame nilpotent_frame_at(const Vector7& p)
{
  Frame f = Frame::Zero();
  const double x = p(0);
  f(0, 0) = 1.0;
  f(4, 0) = 0.5 * kSqrt3 * x - p(1) + 1.0;
  f(5, 0) = 1.0 - p(2);
  f(6, 0) = -0.5 * kSqrt3 * x - p(3) + 1.0;
  f(1, 1) = 1.0;
  f(2, 2) = 1.0;
  f(3, 3) = 1.0;
  return f;
}

Eigen::Vector4d frame_controls(const Vector7& p, const Vector7& v, double* residual)
{
  // N2..N4 are the leg coordinate fields and N1 is the only field moving x.
  const Eigen::Vector4d u = v.head<4>();
  if (residual) *residual = (v - nilpotent_frame_at(p) * u).norm();
  return u;
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b)
{
  const double xb = b.x();
  return GroupElement::from(a.x() + xb, a.l1() + b.l1(), a.l2() + b.l2(), a.l3() + b.l3(),
                            a.y1() + b.y1() + 0.5 * kSqrt3 * a.x() * xb - a.l1() * xb,
                            a.y2() + b.y2() - a.l2() * xb,
                            a.y3() + b.y3() - 0.5 * kSqrt3 * a.x() * xb - a.l3() * xb);
}

GroupElement group_inverse(const GroupElement& a)
{
  const double x = a.x();
  return GroupElement::from(-x, -a.l1(), -a.l2(), -a.l3(), -a.y1() + 0.5 * kSqrt3 * x * x - a.l1() * x,
                            -a.y2() - a.l2() * x, -a.y3() - 0.5 * kSqrt3 * x * x - a.l3() * x);
}

Matrix7 left_translation_jacobian(const GroupElement& g)
{
  Matrix7 j = Matrix7::Identity();
  j(4, 0) = 0.5 * kSqrt3 * g.x() - g.l1();
  j(5, 0) = -g.l2();
  j(6, 0) = -0.5 * kSqrt3 * g.x() - g.l3();
  return j;
}

InvarianceReport check_left_invariance(const VectorField& field, int samples, std::uint64_t seed, double tol)
{
  if (field.chart() != Chart::adapted) throw ChartMismatch("left invariance is defined in the adapted chart");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  InvarianceReport report;
  for (int s = 0; s < samples; ++s) {
    GroupElement g;
    GroupElement p;
    for (int i = 0; i < 7; ++i) g.coords(i) = box(rng);
    for (int i = 0; i < 7; ++i) p.coords(i) = box(rng);
    const Vector7 pushed = left_translation_jacobian(g) * eval_field(field, p.coords);
    const Vector7 at_image = eval_field(field, group_mul(g, p).coords);
    report.max_residual = std::max(report.max_residual, (pushed - at_image).lpNorm<Eigen::Infinity>());
  }
  report.samples = samples;
  report.passed = report.max_residual < tol;
  return report;
}

namespace {

Expr random_affine(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> numerator(-4, 4);
  std::uniform_int_distribution<int> denominator(1, 3);
  Expr e = Expr::rational(numerator(rng), denominator(rng));
  for (int i = 0; i < 7; ++i) e = e + Expr::rational(numerator(rng), denominator(rng)) * Expr::variable(i);
  // Keep the section generic: a nonzero constant term avoids an identically zero field.
  return e + Expr::integer(5);
}

VectorField random_v_section(std::mt19937_64& rng)
{
  const auto n = nilpotent_frame();
  return random_affine(rng) * n[1] + random_affine(rng) * n[2] + random_affine(rng) * n[3];
}

}  // namespace

PathGeometryReport check_path_geometry_conditions(int samples, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  const auto n = nilpotent_frame();

  PathGeometryReport report;
  report.samples = samples;
  report.min_transversal_sv = std::numeric_limits<double>::infinity();
  report.min_ev_escape = std::numeric_limits<double>::infinity();

  for (int s = 0; s < samples; ++s) {
    Vector7 q;
    for (int i = 0; i < 7; ++i) q(i) = box(rng);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(nilpotent_frame_at(q));
    report.min_transversal_sv = std::min(report.min_transversal_sv, svd.singularValues().minCoeff());

    const VectorField nu = random_v_section(rng);
    const VectorField nu2 = random_v_section(rng);
    double vv_residual = 0.0;
    frame_controls(q, eval_field(lie_bracket(nu, nu2), q), &vv_residual);
    report.max_vv_residual = std::max(report.max_vv_residual, vv_residual);

    const VectorField xi = random_affine(rng) * n[0];
    const Vector7 xi_q = eval_field(xi, q);
    const Vector7 nu_q = eval_field(nu, q);
    if (xi_q.norm() < 1e-6 || nu_q.norm() < 1e-6) continue;
    double escape = 0.0;
    frame_controls(q, eval_field(lie_bracket(xi, nu), q), &escape);
    report.min_ev_escape = std::min(report.min_ev_escape, escape / (xi_q.norm() * nu_q.norm()));
  }

  report.transversal = report.min_transversal_sv > 1e-9;
  report.v_closed = report.max_vv_residual < 1e-9;
  report.nondegenerate = report.min_ev_escape > 1e-6;
  return report;
}

SignatureResult nilpotent_pfaffian_signature(const AdaptedPoint& p, double tol)
{
  const Frame frame = nilpotent_frame_at(p.coords);
  PfaffMatrix annihilator = PfaffMatrix::Zero();
  for (int k = 0; k < 3; ++k) {
    annihilator(k, 4 + k) = 1.0;
    annihilator(k, 0) = -frame(4 + k, 0);
  }

  static const std::array<VectorField, 6> brackets = [] {
    const auto n = nilpotent_frame();
    return std::array<VectorField, 6>{lie_bracket(n[0], n[1]), lie_bracket(n[0], n[2]), lie_bracket(n[0], n[3]),
                                      lie_bracket(n[1], n[2]), lie_bracket(n[1], n[3]), lie_bracket(n[2], n[3])};
  }();
  FrameBrackets values;
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = eval_field(brackets[k], p.coords);
  return dual_curvature_signature(annihilator, values, tol);
}

}  // namespace trident
