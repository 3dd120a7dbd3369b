// Acceptance harness: one PASS/FAIL line per criterion AC1..AC10.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "trident/expr.hpp"
#include "trident/mechanism.hpp"
#include "trident/nilpotent.hpp"
#include "trident/pmp.hpp"
#include "trident/symmetry.hpp"

namespace {

using namespace trident;

struct Outcome
{
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0)
{
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c);
  return buffer;
}

// Bracket table of N1..N4 and step-two nilpotency; exact, under 1 s.
Outcome ac1()
{
  const auto start = std::chrono::steady_clock::now();
  const auto n = nilpotent_frame();
  const auto b = nilpotent_bracket_fields();
  bool ok = true;
  for (std::size_t j = 1; j < 4; ++j) ok = ok && is_zero_field(lie_bracket(n[0], n[j]) - b[j - 1]);
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) ok = ok && is_zero_field(lie_bracket(n[i], n[j]));
  int triples = 0;
  for (const auto& x : n)
    for (const auto& y : n)
      for (const auto& z : n) {
        ok = ok && is_zero_field(lie_bracket(x, lie_bracket(y, z)));
        ++triples;
      }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && seconds < 1.0, fmt("exact table, %.0f triple brackets zero, %.3f s (limit 1 s)", triples, seconds)};
}

// Growth (4,7) and det G != 0 at q0 and 1000 random valid configurations; under 10 s.
Outcome ac2()
{
  const auto start = std::chrono::steady_clock::now();
  const ControllabilityResult r0 = controllability(reference_configuration());
  bool ok = r0.d1 == 4 && r0.d2 == 7 && r0.det_nonzero;
  std::mt19937_64 rng(2);
  int good = 0;
  double min_det = std::abs(r0.det_gbar);
  for (int s = 0; s < 1000; ++s) {
    const ControllabilityResult r = controllability(testing::random_valid_configuration(rng));
    if (r.d1 == 4 && r.d2 == 7 && r.det_nonzero) ++good;
    min_det = std::min(min_det, std::abs(r.det_gbar));
  }
  ok = ok && good == 1000;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok && seconds < 10.0,
          fmt("q0 det %.5f; %.0f/1000 random with (4,7); %.2f s (limit 10 s)", r0.det_gbar, good, seconds) +
              fmt("; min |det| %.3e", min_det)};
}

// Dynamic pair ranks (3,6) and transversality at q0 for f in {1, 2, -0.5}.
Outcome ac3()
{
  bool ok = true;
  std::string detail;
  for (double f : {1.0, 2.0, -0.5}) {
    const DynamicPairResult r = check_dynamic_pair(reference_configuration(), f);
    ok = ok && r.rank_v0 == 3 && r.rank_v1 == 6 && r.transversal;
    detail += fmt("f=%g: (%.0f,%.0f) ", f, r.rank_v0, r.rank_v1);
    detail += r.transversal ? "transversal; " : "not transversal; ";
  }
  return {ok, detail};
}

// Pfaffian signature (0,0) at q0 and across the random sweep.
Outcome ac4()
{
  bool ok = pfaffian_signature(reference_configuration()) == SignatureResult{0, 0};
  std::mt19937_64 rng(2);
  int good = 0;
  double largest = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const SignatureResult r = pfaffian_signature(testing::random_valid_configuration(rng));
    if (r == SignatureResult{0, 0}) ++good;
    largest = std::max(largest, r.eigenvalues.cwiseAbs().maxCoeff());
  }
  ok = ok && good == 1000;
  return {ok, fmt("q0 (0,0); %.0f/1000 random (0,0); largest |eigenvalue| %.2e", good, largest)};
}

// to_adapted(q0) and chart round trip to 1e-12.
Outcome ac5()
{
  Vector7 expected;
  expected << 0.0, 1.0, 1.0, 1.0, -4.0 * M_PI, 0.8 * M_PI, -4.0 * M_PI;
  const double e0 = (to_adapted(reference_configuration()).coords - expected).lpNorm<Eigen::Infinity>();
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Configuration q = testing::random_valid_configuration(rng);
    worst = std::max(worst, (from_adapted(to_adapted(q)).coords() - q.coords()).lpNorm<Eigen::Infinity>());
  }
  return {e0 < 1e-12 && worst < 1e-12, fmt("q0 error %.2e, round-trip error %.2e (tol 1e-12)", e0, worst)};
}

// Group axioms on 1000 tuples (< 1e-12); left invariance of the seven fields (< 1e-9, 1000 pairs).
Outcome ac6()
{
  std::mt19937_64 rng(6);
  double axioms = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const GroupElement a{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement b{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement c{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement inv = group_inverse(a);
    axioms = std::max({axioms, (group_mul(a, GroupElement::origin()).coords - a.coords).lpNorm<Eigen::Infinity>(),
                       (group_mul(GroupElement::origin(), a).coords - a.coords).lpNorm<Eigen::Infinity>(),
                       group_mul(a, inv).coords.lpNorm<Eigen::Infinity>(),
                       group_mul(inv, a).coords.lpNorm<Eigen::Infinity>(),
                       (group_mul(group_mul(a, b), c).coords - group_mul(a, group_mul(b, c)).coords)
                           .lpNorm<Eigen::Infinity>()});
  }
  bool invariant = true;
  double worst = 0.0;
  for (const auto& f : nilpotent_algebra_fields()) {
    const InvarianceReport r = check_left_invariance(f, 1000, 6, 1e-9);
    invariant = invariant && r.passed;
    worst = std::max(worst, r.max_residual);
  }
  return {axioms < 1e-12 && invariant,
          fmt("group axiom residual %.2e (tol 1e-12); invariance residual %.2e (tol 1e-9)", axioms, worst)};
}

// so(3) relations, [v_i, N1] = 0, constant antisymmetric action on V, fixed points (< 1e-12).
Outcome ac7()
{
  const auto v = so3_generators();
  bool ok = is_zero_field(lie_bracket(v[0], v[1]) + v[2]) && is_zero_field(lie_bracket(v[0], v[2]) - v[1]) &&
            is_zero_field(lie_bracket(v[1], v[2]) + v[0]);
  const auto n1 = nilpotent_frame()[0];
  for (const auto& vi : v) {
    ok = ok && is_zero_field(lie_bracket(vi, n1));
    const SymmetryReport r = inspect_symmetry(vi);
    ok = ok && r.passed();
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> weight(-3, 3);
  std::uniform_real_distribution<double> coordinate(-2.0, 2.0);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    int a1 = weight(rng), a2 = weight(rng), a3 = weight(rng);
    if (a1 == 0 && a2 == 0 && a3 == 0) a1 = 1;
    const VectorField field = so3_combination(Rational(a1), Rational(a2), Rational(a3));
    const AdaptedPoint p = fixed_point_set(Eigen::Vector3d(a1, a2, a3), coordinate(rng), coordinate(rng));
    worst = std::max(worst, eval_field(field, p.coords).norm());
  }
  ok = ok && worst < 1e-12;
  return {ok, fmt("exact relations and actions; fixed-point residual %.2e (tol 1e-12)", worst)};
}

// H drift < 1e-8 per unit time and constant h5..h7 for 50 normalized momenta on [0, 2pi].
Outcome ac8()
{
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  double rate = 0.0;
  double casimir = 0.0;
  for (int s = 0; s < 50; ++s) {
    FibreState h;
    for (int i = 0; i < 7; ++i) h(i) = gauss(rng);
    const ExtremalResult e = integrate_extremal(normalize_arclength(h), AdaptedPoint::origin(), 2.0 * M_PI, 1e-3);
    rate = std::max(rate, e.diagnostics.energy_drift_rate);
    casimir = std::max(casimir, e.diagnostics.casimir_drift);
  }
  return {rate < 1e-8 && casimir < 1e-12,
          fmt("max H drift rate %.2e (tol 1e-8); max h5..h7 drift %.2e", rate, casimir)};
}

// Examples 1-3 reproduced to 1e-6 in original coordinates; unit momenta; < 5 s each.
Outcome ac9()
{
  bool ok = Rational(49, 100) + Rational(1, 4) + Rational(1, 4) + Rational(1, 100) == Rational(1) &&
            Rational(5, 8) + Rational(3, 8) == Rational(1);
  std::string detail;
  for (int n = 1; n <= 3; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const FibreState h0 = example_momenta(n);
    const ExtremalResult e = integrate_extremal(h0, AdaptedPoint::origin(), 2.0 * M_PI, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < e.trajectory.size(); ++i) {
      const Configuration q = from_adapted(AdaptedPoint{e.trajectory.q[i]});
      worst = std::max(worst, (q.coords() - example_solution(n, e.trajectory.t[i]).coords()).lpNorm<Eigen::Infinity>());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double norm_error = std::abs(h0.head<4>().squaredNorm() - 1.0);
    ok = ok && worst < 1e-6 && seconds < 5.0 && norm_error < 1e-15;
    detail += fmt("ex%.0f sup %.2e in %.3f s; ", n, worst, seconds);
  }
  return {ok, detail + "hand sums exact"};
}

// Nilpotent loop closes with dy1 = pi A^2; original converges with order >= 2.
Outcome ac10()
{
  const BracketMotionParams params;
  const Configuration q0 = reference_configuration();
  const Vector7 d = bracket_motion(params, MotionSystem::nilpotent, q0).adapted_displacement;
  const double area = M_PI * params.amplitude * params.amplitude;
  const double closure = std::max({d.head<4>().lpNorm<Eigen::Infinity>(), std::abs(d(5)), std::abs(d(6))});
  const double area_error = std::abs(d(4) - area);
  const AmplitudeSweep sweep = bracket_motion_sweep({0.4, 0.2, 0.1, 0.05}, params, q0);
  std::string orders;
  for (double o : sweep.orders) orders += fmt("%.3f ", o);
  const bool ok = closure < 1e-9 && area_error < 1e-6 && sweep.min_order() >= 2.0;
  return {ok, fmt("closure %.2e (tol 1e-9); dy1 %.9f vs %.9f", closure, d(4), area) +
                  fmt(" (err %.2e, tol 1e-6); orders ", area_error) + orders + "(need >= 2)"};
}

}  // namespace

int main()
{
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 bracket table", ac1},           {"AC2 controllability", ac2},
      {"AC3 dynamic pair", ac3},            {"AC4 pfaffian signature", ac4},
      {"AC5 coordinate transforms", ac5},   {"AC6 group and left invariance", ac6},
      {"AC7 symmetries", ac7},              {"AC8 PMP conservation", ac8},
      {"AC9 closed-form reproduction", ac9}, {"AC10 bracket-motion displacement", ac10},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.passed) ++failures;
    std::printf("%s %-34s %s [%.2f s]\n", outcome.passed ? "PASS" : "FAIL", name, outcome.detail.c_str(), seconds);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
