#ifndef TRIDENT_EXPR_HPP
#define TRIDENT_EXPR_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "trident/errors.hpp"
#include "trident/types.hpp"

namespace trident {

/// Exact rational number with 64-bit numerator and denominator.
/// Arithmetic throws std::overflow_error instead of wrapping.
class Rational
{
public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Element a + b*sqrt(3) of the field Q(sqrt 3). Every constant appearing in the
/// mechanism's frames, brackets and symmetries lives here.
class ExactConstant
{
public:
  ExactConstant(Rational rational = {}, Rational root3 = {}) : rational_(rational), root3_(root3) {}

  static ExactConstant sqrt3() { return ExactConstant(0, 1); }

  const Rational& rational() const { return rational_; }
  const Rational& root3() const { return root3_; }
  bool is_zero() const { return rational_.is_zero() && root3_.is_zero(); }
  bool is_one() const { return rational_ == Rational(1) && root3_.is_zero(); }
  double to_double() const;

  ExactConstant inverse() const;
  ExactConstant pow(int n) const;

  friend ExactConstant operator+(const ExactConstant& a, const ExactConstant& b);
  friend ExactConstant operator-(const ExactConstant& a, const ExactConstant& b);
  friend ExactConstant operator*(const ExactConstant& a, const ExactConstant& b);
  friend ExactConstant operator/(const ExactConstant& a, const ExactConstant& b);
  ExactConstant operator-() const { return ExactConstant(-rational_, -root3_); }

  friend bool operator==(const ExactConstant& a, const ExactConstant& b) = default;
  friend std::strong_ordering operator<=>(const ExactConstant& a, const ExactConstant& b);

private:
  Rational rational_;
  Rational root3_;
};

/// Immutable symbolic expression over the seven coordinates of one chart.
///
/// Nodes are shared; copying an Expr is cheap. Equality is structural, so two
/// expressions denoting the same function compare equal only after simplify()
/// has brought both into the same normal form.
class Expr
{
public:
  enum class Kind
  {
    constant,
    pi,
    variable,
    sum,
    product,
    quotient,
    sine,
    cosine,
    power,
  };

  /// The constant zero.
  Expr();
  Expr(ExactConstant value);

  static Expr integer(std::int64_t n) { return Expr(ExactConstant(n)); }
  static Expr rational(std::int64_t num, std::int64_t den) { return Expr(ExactConstant(Rational(num, den))); }
  static Expr sqrt3() { return Expr(ExactConstant::sqrt3()); }
  static Expr pi();
  static Expr variable(int index);

  // Raw node constructors. They do no folding beyond what is documented, so the
  // resulting tree shape is exactly what the caller asked for.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(Expr numerator, Expr denominator);
  static Expr sin(Expr argument);
  static Expr cos(Expr argument);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  const ExactConstant& value() const;
  int variable_index() const;
  int exponent() const;
  std::span<const Expr> args() const;

  /// Structurally the constant 0.
  bool is_zero() const;
  /// Contains no variable node.
  bool is_constant() const;

  // Arithmetic folds literal zeros and ones and flattens nested sums/products.
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Total structural order; 0 iff the trees are identical.
int compare(const Expr& a, const Expr& b);
inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

/// Threshold below which a denominator is treated as zero during evaluation.
inline constexpr double kDenominatorEpsilon = 1e-12;

/// Throws DivisionByZero when a denominator magnitude drops below kDenominatorEpsilon.
double evaluate(const Expr& e, std::span<const double, 7> point);
double evaluate(const Expr& e, const Vector7& point);

Expr differentiate(const Expr& e, int coordinate);

/// Normal form: a Laurent polynomial in atoms (variables, pi, sin, cos, monic
/// sums appearing in denominators) with coefficients in Q(sqrt 3), followed by
/// a bounded number of sin^2 + cos^2 -> 1 rewrites. Idempotent.
Expr simplify(const Expr& e);

/// Structural equality after simplification, falling back to comparing values
/// at `samples` random points of [-1,1]^4 x [0.5,2]^3 (relative tolerance `tol`).
bool equivalent(const Expr& a, const Expr& b, int samples = 50, double tol = 1e-9, std::uint64_t seed = 0);

std::string to_string(const Expr& e, Chart chart = Chart::original);

/// A vector field on R^7 with symbolic coefficients in a fixed chart.
class VectorField
{
public:
  VectorField(Chart chart, std::array<Expr, 7> components, std::string name = {});

  static VectorField zero(Chart chart);
  /// The coordinate field d/d(coordinate `index`).
  static VectorField coordinate(Chart chart, int index);

  Chart chart() const { return chart_; }
  const Expr& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::array<Expr, 7>& components() const { return components_; }
  const std::string& name() const { return name_; }
  VectorField named(std::string name) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& f, const VectorField& v);
  VectorField operator-() const;

private:
  Chart chart_;
  std::array<Expr, 7> components_;
  std::string name_;
};

Vector7 eval_field(const VectorField& field, const Vector7& point);

/// [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i), simplified. Throws ChartMismatch.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

VectorField simplify(const VectorField& field);

/// Every component simplifies structurally to 0.
bool is_zero_field(const VectorField& field);

/// Structural equality after simplification, with the evaluation fallback of equivalent().
bool fields_equivalent(const VectorField& a, const VectorField& b, int samples = 50, double tol = 1e-9,
                       std::uint64_t seed = 0);

/// Derivative of `field` along the constant direction implied by `coordinate`.
VectorField differentiate(const VectorField& field, int coordinate);

std::string to_string(const VectorField& field);

}  // namespace trident

#endif  // TRIDENT_EXPR_HPP
