#include "trident/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "trident/errors.hpp"
#include "trident/ode.hpp"

namespace trident {

namespace {

constexpr int kX = 0;
constexpr int kY1 = 4;

struct SymbolicCoordinates
{
  Expr x = Expr::variable(0);
  Expr l1 = Expr::variable(1);
  Expr l2 = Expr::variable(2);
  Expr l3 = Expr::variable(3);
  Expr y1 = Expr::variable(4);
  Expr y2 = Expr::variable(5);
  Expr y3 = Expr::variable(6);
  Expr quarter_root3 = Expr(ExactConstant(0, Rational(1, 4)));
};

VectorField field(std::array<Expr, 7> components, std::string name)
{
  return simplify(VectorField(Chart::adapted, std::move(components), std::move(name)));
}

Vector7 random_point(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  Vector7 p;
  for (int i = 0; i < 7; ++i) p(i) = box(rng);
  return p;
}

double sampled_norm(const VectorField& f, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  double norm = 0.0;
  for (int s = 0; s < 20; ++s) norm = std::max(norm, eval_field(f, random_point(rng)).lpNorm<Eigen::Infinity>());
  return norm;
}

}  // namespace

std::array<VectorField, 3> so3_generators()
{
  const SymbolicCoordinates c;
  const Expr a = c.quarter_root3 * c.x * c.x - c.x + c.y3;
  const Expr b = c.quarter_root3 * c.x * c.x + c.x - c.y1;
  const Expr d = c.x - c.y2;
  const Expr zero;

  return {field({zero, zero, -c.l3, c.l2, zero, -a, -d}, "v1"), field({zero, c.l3, zero, -c.l1, a, zero, b}, "v2"),
          field({zero, -c.l2, c.l1, zero, d, -b, zero}, "v3")};
}

VectorField so3_combination(const Rational& a1, const Rational& a2, const Rational& a3)
{
  const auto v = so3_generators();
  const VectorField sum = Expr(ExactConstant(a1)) * v[0] + Expr(ExactConstant(a2)) * v[1] + Expr(ExactConstant(a3)) * v[2];
  return simplify(sum).named("a1*v1 + a2*v2 + a3*v3");
}

std::array<VectorField, 7> transitive_generators()
{
  const SymbolicCoordinates c;
  const Expr zero;
  const Expr one = Expr::integer(1);
  const Expr half_root3 = Expr(ExactConstant(0, Rational(1, 2)));

  return {field({-one, -half_root3, zero, zero, zero, zero, half_root3 * c.x}, "w1"),
          field({zero, one, zero, zero, -c.x, zero, zero}, "w2"),
          field({zero, zero, one, zero, zero, -c.x, zero}, "w3"),
          field({zero, zero, zero, one, zero, zero, -c.x}, "w4"),
          VectorField::coordinate(Chart::adapted, 4).named("w12"),
          VectorField::coordinate(Chart::adapted, 5).named("w13"),
          VectorField::coordinate(Chart::adapted, 6).named("w14")};
}

So3Table so3_structure()
{
  const auto v = so3_generators();
  So3Table table{lie_bracket(v[0], v[1]).named("[v1,v2]"), lie_bracket(v[0], v[2]).named("[v1,v3]"),
                 lie_bracket(v[1], v[2]).named("[v2,v3]"), false};
  table.closes = is_zero_field(table.v1v2 + v[2]) && is_zero_field(table.v1v3 - v[1]) &&
                 is_zero_field(table.v2v3 + v[0]);
  return table;
}

NotASymmetry::NotASymmetry(SymmetryReport report)
    : Error("'" + report.field_name + "' is not a symmetry of the nilpotent structure (residual norm " +
            std::to_string(report.residual_norm) + ")"),
      report_(std::move(report))
{
}

SymmetryReport inspect_symmetry(const VectorField& v, std::uint64_t seed)
{
  if (v.chart() != Chart::adapted) throw ChartMismatch("symmetries are checked in the adapted chart");
  const auto n = nilpotent_frame();

  SymmetryReport report;
  report.field_name = v.name().empty() ? "v" : v.name();

  const VectorField with_n1 = lie_bracket(v, n[0]);
  report.commutes_with_n1 = is_zero_field(with_n1);
  if (!report.commutes_with_n1) {
    report.residual = with_n1.named("[v,N1]");
    report.residual_norm = sampled_norm(with_n1, seed);
    return report;
  }

  // [v, Nj] decomposes over N1..N4, N12..N14. N1 is the only frame field with
  // a dx component, so with that component zero the dy-part is the bracket part.
  std::array<VectorField, 3> brackets{VectorField::zero(Chart::adapted), VectorField::zero(Chart::adapted),
                                      VectorField::zero(Chart::adapted)};
  report.preserves_v = true;
  report.constant_coefficients = true;
  for (int j = 0; j < 3; ++j) {
    const VectorField b = lie_bracket(v, n[static_cast<std::size_t>(j + 1)]);
    brackets[static_cast<std::size_t>(j)] = b;

    std::array<Expr, 7> outside{};
    outside[kX] = b[kX];
    for (int k = kY1; k < 7; ++k) outside[static_cast<std::size_t>(k)] = b[k];
    const VectorField leak(Chart::adapted, outside, "[v,N" + std::to_string(j + 2) + "] outside V");
    if (report.preserves_v && !is_zero_field(leak)) {
      report.preserves_v = false;
      report.residual = simplify(leak);
      report.residual_norm = sampled_norm(leak, seed);
    }
    for (int k = 0; k < 3; ++k) {
      const Expr coefficient = simplify(b[k + 1]);
      if (coefficient.is_constant()) {
        report.action(j, k) = coefficient.value().to_double();
      } else if (report.constant_coefficients) {
        report.constant_coefficients = false;
        if (report.preserves_v) {
          report.residual = b.named("[v,N" + std::to_string(j + 2) + "]");
          report.residual_norm = sampled_norm(b, seed);
        }
      }
    }
  }
  if (!report.preserves_v || !report.constant_coefficients) return report;

  const Eigen::Matrix3d symmetric_part = report.action + report.action.transpose();
  report.antisymmetric = symmetric_part.lpNorm<Eigen::Infinity>() < 1e-12;
  if (!report.antisymmetric) {
    // [v, Nj] + sum_k A_kj Nk vanishes exactly when A is antisymmetric.
    for (int j = 0; j < 3; ++j) {
      if (symmetric_part.row(j).lpNorm<Eigen::Infinity>() < 1e-12) continue;
      std::array<Expr, 7> r{};
      for (int k = 0; k < 3; ++k) {
        const auto sym = ExactConstant(simplify(brackets[static_cast<std::size_t>(j)][k + 1]).value()) +
                         ExactConstant(simplify(brackets[static_cast<std::size_t>(k)][j + 1]).value());
        r[static_cast<std::size_t>(k + 1)] = Expr(sym);
      }
      report.residual = VectorField(Chart::adapted, r, "[v,N" + std::to_string(j + 2) + "] + A^T N");
      report.residual_norm = symmetric_part.row(j).lpNorm<Eigen::Infinity>();
      break;
    }
  }
  return report;
}

SymmetryReport check_symmetry_conditions(const VectorField& v)
{
  SymmetryReport report = inspect_symmetry(v);
  if (!report.passed()) throw NotASymmetry(std::move(report));
  return report;
}

AdaptedPoint fixed_point_set(const Eigen::Vector3d& a, double x, double k)
{
  if (a.isZero(0.0)) throw ZeroCombination("fixed_point_set needs a nonzero combination of v1, v2, v3");
  const double q = std::sqrt(3.0) / 4.0 * x * x;
  return AdaptedPoint::from(x, k * a(0), k * a(1), k * a(2), x + q + k * a(0), x + k * a(1), x - q + k * a(2));
}

AdaptedPoint symmetry_flow(const VectorField& v, const AdaptedPoint& p, double t, double dt)
{
  if (!(dt > 0.0)) throw InvalidArgument("symmetry_flow needs dt > 0");
  if (v.chart() != Chart::adapted) throw ChartMismatch("symmetry_flow works in the adapted chart");
  if (t == 0.0) return p;
  const std::size_t n = step_count(t, dt);
  const double h = t / static_cast<double>(n);
  const auto rhs = [&v](double, const Vector7& y) -> Vector7 { return eval_field(v, y); };
  Vector7 y = p.coords;
  for (std::size_t i = 0; i < n; ++i) y = rk4_step(rhs, h * static_cast<double>(i), y, h);
  return AdaptedPoint{y};
}

TransitiveAlgebraReport check_transitive_algebra(int samples, std::uint64_t seed)
{
  const auto w = transitive_generators();
  const auto n = nilpotent_frame();

  TransitiveAlgebraReport report;
  report.closes = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const VectorField b = lie_bracket(w[i], w[j]);
      const bool ok = (i == 0 && j >= 1 && j <= 3) ? is_zero_field(b - w[j + 3]) : is_zero_field(b);
      report.closes = report.closes && ok;
    }
  }

  report.commutes_with_frame = true;
  for (const auto& wi : w)
    for (const auto& nj : n) report.commutes_with_frame = report.commutes_with_frame && is_zero_field(lie_bracket(wi, nj));

  std::mt19937_64 rng(seed);
  report.min_rank = 7;
  for (int s = 0; s < samples; ++s) {
    const Vector7 p = random_point(rng);
    Eigen::MatrixXd values(7, 7);
    for (int i = 0; i < 7; ++i) values.col(i) = eval_field(w[static_cast<std::size_t>(i)], p);
    report.min_rank = std::min(report.min_rank, numeric_rank(values, 1e-9));
  }
  return report;
}

namespace {

double control_speed(const Vector7& p, const Vector7& v, double* residual)
{
  return frame_controls(p, v, residual).norm();
}

// Composite trapezoid on a uniform grid.
double trapezoid(const std::vector<double>& f, double h)
{
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

}  // namespace

FlowInvarianceReport check_flow_invariance(const VectorField& v, const std::vector<Vector7>& points,
                                           const std::vector<Vector7>& velocities, double time_step, double s,
                                           double flow_dt)
{
  if (points.size() != velocities.size()) throw InvalidArgument("points and velocities differ in length");
  FlowInvarianceReport report;
  std::vector<double> before;
  std::vector<double> after;
  before.reserve(points.size());
  after.reserve(points.size());

  constexpr double eps = 1e-5;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector7& p = points[i];
    const Vector7& dp = velocities[i];
    before.push_back(control_speed(p, dp, nullptr));

    // Pushforward of the velocity through the time-s flow by central differences.
    const Vector7 image = symmetry_flow(v, AdaptedPoint{p}, s, flow_dt).coords;
    const Vector7 plus = symmetry_flow(v, AdaptedPoint{Vector7(p + eps * dp)}, s, flow_dt).coords;
    const Vector7 minus = symmetry_flow(v, AdaptedPoint{Vector7(p - eps * dp)}, s, flow_dt).coords;
    const Vector7 pushed = (plus - minus) / (2.0 * eps);

    double residual = 0.0;
    after.push_back(control_speed(image, pushed, &residual));
    report.max_horizontal_residual = std::max(report.max_horizontal_residual, residual);
  }
  report.length_before = trapezoid(before, time_step);
  report.length_after = trapezoid(after, time_step);
  report.relative_length_change =
      report.length_before > 0.0 ? std::abs(report.length_after - report.length_before) / report.length_before
                                 : std::abs(report.length_after);
  return report;
}

}  // namespace trident
