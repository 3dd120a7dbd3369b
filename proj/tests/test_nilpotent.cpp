#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "trident/errors.hpp"
#include "trident/mechanism.hpp"
#include "trident/nilpotent.hpp"

namespace trident {
namespace {

const double kSqrt3 = std::sqrt(3.0);

TEST(ChartTest, ReferenceConfigurationInAdaptedChart)
{
  const AdaptedPoint p = to_adapted(reference_configuration());
  Vector7 expected;
  expected << 0.0, 1.0, 1.0, 1.0, -4.0 * M_PI, 0.8 * M_PI, -4.0 * M_PI;
  EXPECT_LT((p.coords - expected).lpNorm<Eigen::Infinity>(), 1e-12);

  const Configuration back = from_adapted(AdaptedPoint{expected});
  EXPECT_EQ(back.chart(), Chart::original);
  EXPECT_LT((back.coords() - reference_configuration().coords()).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(ChartTest, OriginsCorrespond)
{
  EXPECT_TRUE(to_adapted(Configuration(Chart::original, Vector7::Zero())).coords.isZero(0.0));
  EXPECT_TRUE(from_adapted(AdaptedPoint::origin()).coords().isZero(0.0));
}

TEST(ChartTest, RoundTrip)
{
  std::mt19937_64 rng(21);
  for (int s = 0; s < 100; ++s) {
    const Configuration q(Chart::original, testing::random_vector(rng, -3.0, 3.0));
    EXPECT_LT((from_adapted(to_adapted(q)).coords() - q.coords()).lpNorm<Eigen::Infinity>(), 1e-12);
    const AdaptedPoint p{testing::random_vector(rng, -3.0, 3.0)};
    EXPECT_LT((to_adapted(from_adapted(p)).coords - p.coords).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(ChartTest, JacobianMatchesMap)
{
  std::mt19937_64 rng(22);
  const Configuration q(Chart::original, testing::random_vector(rng));
  const Vector7 dq = testing::random_vector(rng);
  const Vector7 image = to_adapted(Configuration(Chart::original, q.coords() + dq)).coords - to_adapted(q).coords;
  EXPECT_LT((image - to_adapted_jacobian() * dq).norm(), 1e-13);
}

TEST(ChartTest, WrongChartThrows)
{
  EXPECT_THROW(to_adapted(Configuration::adapted(0, 0, 0, 0, 0, 0, 0)), ChartMismatch);
  EXPECT_THROW(adapted_point(reference_configuration()), ChartMismatch);
  EXPECT_NO_THROW(adapted_point(Configuration::adapted(0, 0, 0, 0, 0, 0, 0)));
}

TEST(NilpotentFrameTest, N1AtOrigin)
{
  Vector7 expected;
  expected << 1, 0, 0, 0, 1, 1, 1;
  EXPECT_EQ(eval_field(nilpotent_frame()[0], Vector7::Zero()), expected);
  EXPECT_EQ(nilpotent_frame_at(Vector7::Zero()).col(0), expected);
}

TEST(NilpotentFrameTest, NumericFrameMatchesSymbolic)
{
  std::mt19937_64 rng(23);
  const auto n = nilpotent_frame();
  for (int s = 0; s < 50; ++s) {
    const Vector7 p = testing::random_vector(rng, -2.0, 2.0);
    const Frame f = nilpotent_frame_at(p);
    for (int i = 0; i < 4; ++i)
      EXPECT_LT((f.col(i) - eval_field(n[static_cast<std::size_t>(i)], p)).norm(), 1e-14);
  }
}

TEST(NilpotentFrameTest, BracketTable)
{
  const auto n = nilpotent_frame();
  const auto b = nilpotent_bracket_fields();
  for (int j = 1; j < 4; ++j)
    EXPECT_TRUE(is_zero_field(lie_bracket(n[0], n[static_cast<std::size_t>(j)]) - b[static_cast<std::size_t>(j - 1)]));
  for (int i = 1; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      EXPECT_TRUE(is_zero_field(lie_bracket(n[static_cast<std::size_t>(i)], n[static_cast<std::size_t>(j)])));
}

TEST(NilpotentFrameTest, StepTwo)
{
  const auto all = nilpotent_algebra_fields();
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all) EXPECT_TRUE(is_zero_field(lie_bracket(a, lie_bracket(b, c))));
}

TEST(NilpotentFrameTest, FrameControlsRecoverInputs)
{
  std::mt19937_64 rng(24);
  for (int s = 0; s < 20; ++s) {
    const Vector7 p = testing::random_vector(rng);
    const Eigen::Vector4d u = Eigen::Vector4d::Random();
    double residual = 1.0;
    const Eigen::Vector4d back = frame_controls(p, nilpotent_frame_at(p) * u, &residual);
    EXPECT_LT((back - u).norm(), 1e-15);
    EXPECT_LT(residual, 1e-14);
  }
  double residual = 0.0;
  frame_controls(Vector7::Zero(), Vector7::Unit(4), &residual);
  EXPECT_NEAR(residual, 1.0, 1e-15);
}

TEST(FirstOrderApproximationTest, PushforwardOfFrameAtReference)
{
  const Configuration q0 = reference_configuration();
  const Matrix7 j = to_adapted_jacobian();
  const Frame x = horizontal_frame(q0);
  const Frame n = nilpotent_frame_at(to_adapted(q0).coords);
  EXPECT_LT((j * x - n).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(FirstOrderApproximationTest, BracketsAreAdaptedCoordinateFields)
{
  // The adapted chart sends X12, X13, X14 at the reference configuration to dy1, dy2, dy3.
  const FrameBrackets b = frame_brackets(reference_configuration());
  const Matrix7 j = to_adapted_jacobian();
  EXPECT_LT((j * b[0] - Vector7::Unit(4)).norm(), 1e-12);
  EXPECT_LT((j * b[1] - Vector7::Unit(5)).norm(), 1e-12);
  EXPECT_LT((j * b[2] - Vector7::Unit(6)).norm(), 1e-12);
}

TEST(GroupTest, Identity)
{
  std::mt19937_64 rng(25);
  for (int s = 0; s < 100; ++s) {
    const GroupElement p{testing::random_vector(rng, -2.0, 2.0)};
    EXPECT_EQ(group_mul(p, GroupElement::origin()).coords, p.coords);
    EXPECT_EQ(group_mul(GroupElement::origin(), p).coords, p.coords);
  }
}

TEST(GroupTest, HandComputedProduct)
{
  const GroupElement a = GroupElement::from(1, 1, 0, 0, 0, 0, 0);
  const GroupElement b = GroupElement::from(1, 0, 0, 0, 0, 0, 0);
  Vector7 expected;
  expected << 2, 1, 0, 0, kSqrt3 / 2.0 - 1.0, 0, -kSqrt3 / 2.0;
  EXPECT_LT((group_mul(a, b).coords - expected).norm(), 1e-15);
}

TEST(GroupTest, Associativity)
{
  std::mt19937_64 rng(26);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const GroupElement a{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement b{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement c{testing::random_vector(rng, -2.0, 2.0)};
    worst = std::max(worst, (group_mul(group_mul(a, b), c).coords - group_mul(a, group_mul(b, c)).coords)
                                .lpNorm<Eigen::Infinity>());
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(GroupTest, TwoSidedInverse)
{
  EXPECT_TRUE(group_inverse(GroupElement::origin()).coords.isZero(0.0));
  std::mt19937_64 rng(27);
  for (int s = 0; s < 1000; ++s) {
    const GroupElement a{testing::random_vector(rng, -2.0, 2.0)};
    const GroupElement inv = group_inverse(a);
    EXPECT_LT(group_mul(a, inv).coords.lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_LT(group_mul(inv, a).coords.lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(GroupTest, InverseWithoutXIsNegation)
{
  const GroupElement a = GroupElement::from(0, 1, -2, 3, 0.5, -0.25, 4);
  EXPECT_EQ(group_inverse(a).coords, -a.coords);
}

TEST(GroupTest, TranslationJacobianMatchesFiniteDifferences)
{
  std::mt19937_64 rng(28);
  const GroupElement g{testing::random_vector(rng)};
  const GroupElement p{testing::random_vector(rng)};
  const Vector7 dp = testing::random_vector(rng);
  const double h = 1e-6;
  const Vector7 fd = (group_mul(g, GroupElement{p.coords + h * dp}).coords -
                      group_mul(g, GroupElement{p.coords - h * dp}).coords) /
                     (2.0 * h);
  EXPECT_LT((fd - left_translation_jacobian(g) * dp).norm(), 1e-9);
}

TEST(LeftInvarianceTest, AlgebraFieldsAreInvariant)
{
  for (const auto& f : nilpotent_algebra_fields()) {
    const InvarianceReport r = check_left_invariance(f, 1000);
    EXPECT_TRUE(r.passed) << f.name() << " residual " << r.max_residual;
    EXPECT_EQ(r.samples, 1000);
  }
}

TEST(LeftInvarianceTest, CoordinateFieldDxIsNotInvariant)
{
  const InvarianceReport r = check_left_invariance(VectorField::coordinate(Chart::adapted, 0), 10);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(LeftInvarianceTest, ConstantVerticalFieldsAreInvariant)
{
  const auto b = nilpotent_bracket_fields();
  const VectorField f = Expr::rational(2, 3) * b[0] - Expr::sqrt3() * b[2] + Expr::integer(5) * b[1];
  EXPECT_TRUE(check_left_invariance(f, 200).passed);
}

TEST(LeftInvarianceTest, OriginalChartIsRejected)
{
  EXPECT_THROW(check_left_invariance(slice_frame()[0], 1), ChartMismatch);
}

TEST(PathGeometryTest, RandomisedAxiomsHold)
{
  const PathGeometryReport r = check_path_geometry_conditions(200, 4);
  EXPECT_TRUE(r.transversal);
  EXPECT_TRUE(r.v_closed);
  EXPECT_TRUE(r.nondegenerate);
  EXPECT_TRUE(r.passed());
}

TEST(PathGeometryTest, ConstantVerticalSectionsCommute)
{
  const auto n = nilpotent_frame();
  EXPECT_TRUE(is_zero_field(lie_bracket(n[1], n[2])));
}

TEST(PathGeometryTest, BracketOfN1AndN2LeavesDistribution)
{
  const auto n = nilpotent_frame();
  double residual = 0.0;
  frame_controls(Vector7::Zero(), eval_field(lie_bracket(n[0], n[1]), Vector7::Zero()), &residual);
  EXPECT_NEAR(residual, 1.0, 1e-15);
}

TEST(PathGeometryTest, SectionVanishingAtPointStaysInside)
{
  const auto n = nilpotent_frame();
  const VectorField xi = (Expr::variable(0) + Expr::variable(4)) * n[0];
  double residual = 1.0;
  frame_controls(Vector7::Zero(), eval_field(lie_bracket(xi, n[1]), Vector7::Zero()), &residual);
  EXPECT_LT(residual, 1e-15);
}

}  // namespace
}  // namespace trident
