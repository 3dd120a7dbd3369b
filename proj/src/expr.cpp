#include "trident/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace trident {

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

namespace {

__extension__ using Wide = __int128;

std::int64_t narrow(Wide v)
{
  if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN))
    throw std::overflow_error("rational constant overflow");
  return static_cast<std::int64_t>(v);
}

Wide gcd_wide(Wide a, Wide b)
{
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_reduced(Wide num, Wide den)
{
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den)
{
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b)
{
  return make_reduced(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b)
{
  return make_reduced(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b)
{
  if (b.is_zero()) throw DivisionByZero("division by the rational zero");
  return make_reduced(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
  const Wide lhs = Wide(a.num_) * b.den_;
  const Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// ExactConstant
// ---------------------------------------------------------------------------

double ExactConstant::to_double() const { return rational_.to_double() + root3_.to_double() * std::sqrt(3.0); }

ExactConstant ExactConstant::inverse() const
{
  // 1/(a + b r) = (a - b r) / (a^2 - 3 b^2); the norm vanishes only at zero.
  const Rational norm = rational_ * rational_ - Rational(3) * root3_ * root3_;
  if (norm.is_zero()) throw DivisionByZero("inverse of the exact constant zero");
  return ExactConstant(rational_ / norm, -root3_ / norm);
}

ExactConstant ExactConstant::pow(int n) const
{
  if (n < 0) return inverse().pow(-n);
  ExactConstant result(1);
  ExactConstant base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

ExactConstant operator+(const ExactConstant& a, const ExactConstant& b)
{
  return ExactConstant(a.rational_ + b.rational_, a.root3_ + b.root3_);
}

ExactConstant operator-(const ExactConstant& a, const ExactConstant& b) { return a + (-b); }

ExactConstant operator*(const ExactConstant& a, const ExactConstant& b)
{
  return ExactConstant(a.rational_ * b.rational_ + Rational(3) * a.root3_ * b.root3_,
                       a.rational_ * b.root3_ + a.root3_ * b.rational_);
}

ExactConstant operator/(const ExactConstant& a, const ExactConstant& b) { return a * b.inverse(); }

std::strong_ordering operator<=>(const ExactConstant& a, const ExactConstant& b)
{
  if (auto c = a.rational_ <=> b.rational_; c != 0) return c;
  return a.root3_ <=> b.root3_;
}

// ---------------------------------------------------------------------------
// Expr nodes
// ---------------------------------------------------------------------------

struct Expr::Node
{
  Kind kind{Kind::constant};
  ExactConstant value{};
  int index{0};  // variable index or power exponent
  std::vector<Expr> args{};
};

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr::Expr(ExactConstant value) : node_(std::make_shared<const Node>(Node{Kind::constant, value, 0, {}})) {}

Expr Expr::pi() { return Expr(std::make_shared<const Node>(Node{Kind::pi, {}, 0, {}})); }

Expr Expr::variable(int index)
{
  if (index < 0 || index > 6) throw InvalidArgument("coordinate index out of range");
  return Expr(std::make_shared<const Node>(Node{Kind::variable, {}, index, {}}));
}

Expr Expr::sum(std::vector<Expr> terms)
{
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms.front();
  return Expr(std::make_shared<const Node>(Node{Kind::sum, {}, 0, std::move(terms)}));
}

Expr Expr::product(std::vector<Expr> factors)
{
  if (factors.empty()) return Expr::integer(1);
  if (factors.size() == 1) return factors.front();
  return Expr(std::make_shared<const Node>(Node{Kind::product, {}, 0, std::move(factors)}));
}

Expr Expr::quotient(Expr numerator, Expr denominator)
{
  return Expr(std::make_shared<const Node>(
    Node{Kind::quotient, {}, 0, std::vector<Expr>{std::move(numerator), std::move(denominator)}}));
}

Expr Expr::sin(Expr argument)
{
  return Expr(std::make_shared<const Node>(Node{Kind::sine, {}, 0, std::vector<Expr>{std::move(argument)}}));
}

Expr Expr::cos(Expr argument)
{
  return Expr(std::make_shared<const Node>(Node{Kind::cosine, {}, 0, std::vector<Expr>{std::move(argument)}}));
}

Expr Expr::power(Expr base, int exponent)
{
  if (exponent == 1) return base;
  if (exponent == 0) return Expr::integer(1);
  return Expr(std::make_shared<const Node>(Node{Kind::power, {}, exponent, std::vector<Expr>{std::move(base)}}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const ExactConstant& Expr::value() const { return node_->value; }
int Expr::variable_index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
std::span<const Expr> Expr::args() const { return node_->args; }

bool Expr::is_zero() const { return node_->kind == Kind::constant && node_->value.is_zero(); }

bool Expr::is_constant() const
{
  if (node_->kind == Kind::variable) return false;
  return std::all_of(node_->args.begin(), node_->args.end(), [](const Expr& a) { return a.is_constant(); });
}

namespace {

bool is_one(const Expr& e) { return e.kind() == Expr::Kind::constant && e.value().is_one(); }

void append_flat(std::vector<Expr>& out, const Expr& e, Expr::Kind kind)
{
  if (e.kind() == kind)
    out.insert(out.end(), e.args().begin(), e.args().end());
  else
    out.push_back(e);
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b)
{
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant) return Expr(a.value() + b.value());
  std::vector<Expr> terms;
  append_flat(terms, a, Expr::Kind::sum);
  append_flat(terms, b, Expr::Kind::sum);
  return Expr::sum(std::move(terms));
}

Expr Expr::operator-() const
{
  if (kind() == Kind::constant) return Expr(-value());
  return Expr::integer(-1) * *this;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b)
{
  if (a.is_zero() || b.is_zero()) return Expr();
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (a.kind() == Expr::Kind::constant && b.kind() == Expr::Kind::constant) return Expr(a.value() * b.value());
  std::vector<Expr> factors;
  append_flat(factors, a, Expr::Kind::product);
  append_flat(factors, b, Expr::Kind::product);
  return Expr::product(std::move(factors));
}

Expr operator/(const Expr& a, const Expr& b)
{
  if (b.is_zero()) throw DivisionByZero("symbolic division by zero");
  if (a.is_zero()) return Expr();
  if (is_one(b)) return a;
  if (b.kind() == Expr::Kind::constant) return Expr(b.value().inverse()) * a;
  return Expr::quotient(a, b);
}

int compare(const Expr& a, const Expr& b)
{
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Expr::Kind::constant: {
      const auto c = a.value() <=> b.value();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Expr::Kind::pi:
      return 0;
    case Expr::Kind::variable:
      return a.variable_index() < b.variable_index() ? -1 : (a.variable_index() > b.variable_index() ? 1 : 0);
    case Expr::Kind::power:
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      break;
    default:
      break;
  }
  const auto aa = a.args();
  const auto bb = b.args();
  const std::size_t n = std::min(aa.size(), bb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(aa[i], bb[i]); c != 0) return c;
  if (aa.size() != bb.size()) return aa.size() < bb.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Evaluation and differentiation
// ---------------------------------------------------------------------------

double evaluate(const Expr& e, std::span<const double, 7> point)
{
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e.value().to_double();
    case Expr::Kind::pi:
      return M_PI;
    case Expr::Kind::variable:
      return point[static_cast<std::size_t>(e.variable_index())];
    case Expr::Kind::sum: {
      double s = 0.0;
      for (const auto& t : e.args()) s += evaluate(t, point);
      return s;
    }
    case Expr::Kind::product: {
      double p = 1.0;
      for (const auto& f : e.args()) p *= evaluate(f, point);
      return p;
    }
    case Expr::Kind::quotient: {
      const double den = evaluate(e.args()[1], point);
      if (std::abs(den) < kDenominatorEpsilon) throw DivisionByZero("denominator vanishes at evaluation point");
      return evaluate(e.args()[0], point) / den;
    }
    case Expr::Kind::sine:
      return std::sin(evaluate(e.args()[0], point));
    case Expr::Kind::cosine:
      return std::cos(evaluate(e.args()[0], point));
    case Expr::Kind::power: {
      const double base = evaluate(e.args()[0], point);
      if (e.exponent() < 0 && std::abs(base) < kDenominatorEpsilon)
        throw DivisionByZero("negative power of a vanishing base");
      return std::pow(base, e.exponent());
    }
  }
  throw std::logic_error("unknown expression kind");
}

double evaluate(const Expr& e, const Vector7& point)
{
  return evaluate(e, std::span<const double, 7>(point.data(), 7));
}

Expr differentiate(const Expr& e, int coordinate)
{
  switch (e.kind()) {
    case Expr::Kind::constant:
    case Expr::Kind::pi:
      return Expr();
    case Expr::Kind::variable:
      return e.variable_index() == coordinate ? Expr::integer(1) : Expr();
    case Expr::Kind::sum: {
      Expr result;
      for (const auto& t : e.args()) result = result + differentiate(t, coordinate);
      return result;
    }
    case Expr::Kind::product: {
      const auto factors = e.args();
      Expr result;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        Expr dk = differentiate(factors[k], coordinate);
        if (dk.is_zero()) continue;
        Expr term = dk;
        for (std::size_t j = 0; j < factors.size(); ++j)
          if (j != k) term = term * factors[j];
        result = result + term;
      }
      return result;
    }
    case Expr::Kind::quotient: {
      const Expr& u = e.args()[0];
      const Expr& v = e.args()[1];
      const Expr du = differentiate(u, coordinate);
      const Expr dv = differentiate(v, coordinate);
      if (du.is_zero() && dv.is_zero()) return Expr();
      if (dv.is_zero()) return du / v;
      return (du * v - u * dv) / Expr::power(v, 2);
    }
    case Expr::Kind::sine: {
      const Expr du = differentiate(e.args()[0], coordinate);
      return du.is_zero() ? Expr() : Expr::cos(e.args()[0]) * du;
    }
    case Expr::Kind::cosine: {
      const Expr du = differentiate(e.args()[0], coordinate);
      return du.is_zero() ? Expr() : -(Expr::sin(e.args()[0]) * du);
    }
    case Expr::Kind::power: {
      const Expr& base = e.args()[0];
      const Expr du = differentiate(base, coordinate);
      if (du.is_zero()) return Expr();
      const int n = e.exponent();
      return Expr::integer(n) * Expr::power(base, n - 1) * du;
    }
  }
  throw std::logic_error("unknown expression kind");
}

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

namespace {

struct ExprLess
{
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Sorted (atom, exponent) list; exponents are never zero.
using Monomial = std::vector<std::pair<Expr, int>>;

struct MonomialLess
{
  bool operator()(const Monomial& a, const Monomial& b) const
  {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (int c = compare(a[i].first, b[i].first); c != 0) return c < 0;
      if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
  }
};

using Poly = std::map<Monomial, ExactConstant, MonomialLess>;

constexpr int kPythagoreanBudget = 256;

Poly poly_constant(const ExactConstant& c)
{
  Poly p;
  if (!c.is_zero()) p.emplace(Monomial{}, c);
  return p;
}

void add_term(Poly& p, const Monomial& m, const ExactConstant& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly add(const Poly& a, const Poly& b)
{
  Poly r = a;
  for (const auto& [m, c] : b) add_term(r, m, c);
  return r;
}

Monomial multiply_monomials(const Monomial& a, const Monomial& b)
{
  std::map<Expr, int, ExprLess> exps;
  for (const auto& [f, k] : a) exps[f] += k;
  for (const auto& [f, k] : b) exps[f] += k;
  Monomial m;
  for (const auto& [f, k] : exps)
    if (k != 0) m.emplace_back(f, k);
  return m;
}

Poly multiply(const Poly& a, const Poly& b)
{
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_term(r, multiply_monomials(ma, mb), ca * cb);
  return r;
}

Expr rebuild(const Poly& p);
Poly normalize(const Expr& e);

Poly reduce_pythagorean(Poly p)
{
  for (int budget = 0; budget < kPythagoreanBudget; ++budget) {
    bool rewrote = false;
    for (const auto& [m, c] : p) {
      for (const auto& [atom, k] : m) {
        if (atom.kind() != Expr::Kind::sine || k < 2) continue;
        const Expr cosine = Expr::cos(atom.args()[0]);
        const Monomial sin2{{atom, 2}};
        const Monomial cos2{{cosine, 2}};
        const Monomial rest = multiply_monomials(m, Monomial{{atom, -2}});
        const Monomial partner = multiply_monomials(rest, cos2);
        auto it = p.find(partner);
        if (it == p.end() || !(it->second == c)) continue;
        const ExactConstant coefficient = c;
        const Monomial self = m;
        p.erase(it);
        p.erase(self);
        add_term(p, rest, coefficient);
        rewrote = true;
        break;
      }
      if (rewrote) break;
    }
    if (!rewrote) break;
  }
  return p;
}

Poly poly_atom(const Expr& atom, int exponent = 1) { return Poly{{Monomial{{atom, exponent}}, ExactConstant(1)}}; }

Poly normalize_product(const std::vector<std::pair<Expr, int>>& factors)
{
  ExactConstant coefficient(1);
  std::map<Expr, int, ExprLess> exps;
  for (const auto& [e, k] : factors) {
    Poly p = normalize(e);
    if (p.empty()) {
      if (k > 0) return {};
      throw DivisionByZero("symbolic division by zero");
    }
    if (p.size() == 1) {
      const auto& [m, c] = *p.begin();
      coefficient = coefficient * c.pow(k);
      for (const auto& [f, j] : m) exps[f] += j * k;
      continue;
    }
    // Multi-term factor: pull out the leading coefficient so that the remaining
    // sum is monic and can serve as a canonical atom.
    const ExactConstant lead = p.begin()->second;
    const ExactConstant lead_inverse = lead.inverse();
    Poly monic;
    for (const auto& [m, c] : p) monic.emplace(m, c * lead_inverse);
    coefficient = coefficient * lead.pow(k);
    exps[rebuild(monic)] += k;
  }

  Monomial plain;
  Poly result = poly_constant(coefficient);
  for (const auto& [atom, k] : exps) {
    if (k == 0) continue;
    if (atom.kind() == Expr::Kind::sum && k > 0) {
      const Poly expanded = normalize(atom);
      for (int i = 0; i < k; ++i) result = multiply(result, expanded);
    } else {
      plain.emplace_back(atom, k);
    }
  }
  if (!plain.empty()) result = multiply(result, Poly{{plain, ExactConstant(1)}});
  return result;
}

bool leading_is_negative(const Poly& p) { return !p.empty() && p.begin()->second.to_double() < 0.0; }

Poly negate(Poly p)
{
  for (auto& [m, c] : p) c = -c;
  return p;
}

Poly normalize(const Expr& e)
{
  switch (e.kind()) {
    case Expr::Kind::constant:
      return poly_constant(e.value());
    case Expr::Kind::pi:
    case Expr::Kind::variable:
      return poly_atom(e);
    case Expr::Kind::sum: {
      Poly r;
      for (const auto& t : e.args()) r = add(r, normalize(t));
      return reduce_pythagorean(std::move(r));
    }
    case Expr::Kind::product: {
      std::vector<std::pair<Expr, int>> factors;
      for (const auto& f : e.args()) factors.emplace_back(f, 1);
      return reduce_pythagorean(normalize_product(factors));
    }
    case Expr::Kind::quotient:
      return reduce_pythagorean(normalize_product({{e.args()[0], 1}, {e.args()[1], -1}}));
    case Expr::Kind::power:
      return reduce_pythagorean(normalize_product({{e.args()[0], e.exponent()}}));
    case Expr::Kind::sine:
    case Expr::Kind::cosine: {
      Poly arg = normalize(e.args()[0]);
      const bool is_sine = e.kind() == Expr::Kind::sine;
      if (arg.empty()) return poly_constant(ExactConstant(is_sine ? 0 : 1));
      bool flip = false;
      if (leading_is_negative(arg)) {
        arg = negate(std::move(arg));
        flip = is_sine;  // sin is odd, cos is even
      }
      const Expr canonical = rebuild(arg);
      Poly atom = poly_atom(is_sine ? Expr::sin(canonical) : Expr::cos(canonical));
      return flip ? negate(std::move(atom)) : atom;
    }
  }
  throw std::logic_error("unknown expression kind");
}

Expr rebuild_term(const Monomial& m, const ExactConstant& c)
{
  std::vector<Expr> numerator;
  std::vector<Expr> denominator;
  if (!c.is_one()) numerator.emplace_back(c);
  for (const auto& [atom, k] : m) {
    if (k > 0)
      numerator.push_back(Expr::power(atom, k));
    else
      denominator.push_back(Expr::power(atom, -k));
  }
  Expr num = Expr::product(std::move(numerator));
  if (denominator.empty()) return num;
  return Expr::quotient(std::move(num), Expr::product(std::move(denominator)));
}

Expr rebuild(const Poly& p)
{
  if (p.empty()) return Expr();
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back(rebuild_term(m, c));
  return Expr::sum(std::move(terms));
}

}  // namespace

Expr simplify(const Expr& e) { return rebuild(normalize(e)); }

namespace {

std::array<double, 7> random_sample_point(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  std::uniform_real_distribution<double> leg(0.5, 2.0);
  std::array<double, 7> p{};
  for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i)] = angle(rng);
  for (int i = 4; i < 7; ++i) p[static_cast<std::size_t>(i)] = leg(rng);
  return p;
}

}  // namespace

bool equivalent(const Expr& a, const Expr& b, int samples, double tol, std::uint64_t seed)
{
  const Expr sa = simplify(a);
  const Expr sb = simplify(b);
  if (sa == sb) return true;
  const Expr diff = simplify(a - b);
  if (diff.is_zero()) return true;

  std::mt19937_64 rng(seed);
  int evaluated = 0;
  for (int attempt = 0; evaluated < samples && attempt < 20 * samples; ++attempt) {
    const auto p = random_sample_point(rng);
    double va = 0.0;
    double vb = 0.0;
    try {
      va = evaluate(a, std::span<const double, 7>(p));
      vb = evaluate(b, std::span<const double, 7>(p));
    } catch (const DivisionByZero&) {
      continue;
    }
    ++evaluated;
    const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
    if (!(std::abs(va - vb) <= tol * scale)) return false;
  }
  return evaluated > 0;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string rational_string(const Rational& r)
{
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string constant_string(const ExactConstant& c)
{
  const bool has_rational = !c.rational().is_zero();
  const bool has_root = !c.root3().is_zero();
  if (!has_root) return rational_string(c.rational());
  std::string root;
  if (c.root3() == Rational(1))
    root = "sqrt(3)";
  else if (c.root3() == Rational(-1))
    root = "-sqrt(3)";
  else
    root = rational_string(c.root3()) + "*sqrt(3)";
  if (!has_rational) return root;
  return "(" + rational_string(c.rational()) + " + " + root + ")";
}

void print(std::ostringstream& out, const Expr& e, Chart chart, bool wrap)
{
  const auto& names = coordinate_names(chart);
  switch (e.kind()) {
    case Expr::Kind::constant: {
      const std::string s = constant_string(e.value());
      const bool needs = wrap && s.find('/') != std::string::npos && s.front() != '(';
      out << (needs ? "(" + s + ")" : s);
      return;
    }
    case Expr::Kind::pi:
      out << "pi";
      return;
    case Expr::Kind::variable:
      out << names[static_cast<std::size_t>(e.variable_index())];
      return;
    case Expr::Kind::sum: {
      if (wrap) out << '(';
      bool first = true;
      for (const auto& t : e.args()) {
        if (!first) out << " + ";
        print(out, t, chart, false);
        first = false;
      }
      if (wrap) out << ')';
      return;
    }
    case Expr::Kind::product: {
      bool first = true;
      for (const auto& f : e.args()) {
        if (!first) out << '*';
        print(out, f, chart, true);
        first = false;
      }
      return;
    }
    case Expr::Kind::quotient:
      if (wrap) out << '(';
      print(out, e.args()[0], chart, true);
      out << '/';
      print(out, e.args()[1], chart, true);
      if (wrap) out << ')';
      return;
    case Expr::Kind::sine:
    case Expr::Kind::cosine:
      out << (e.kind() == Expr::Kind::sine ? "sin(" : "cos(");
      print(out, e.args()[0], chart, false);
      out << ')';
      return;
    case Expr::Kind::power:
      print(out, e.args()[0], chart, true);
      out << '^' << e.exponent();
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e, Chart chart)
{
  std::ostringstream out;
  print(out, e, chart, false);
  return out.str();
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField(Chart chart, std::array<Expr, 7> components, std::string name)
  : chart_(chart), components_(std::move(components)), name_(std::move(name))
{
}

VectorField VectorField::zero(Chart chart) { return VectorField(chart, {}); }

VectorField VectorField::coordinate(Chart chart, int index)
{
  if (index < 0 || index > 6) throw InvalidArgument("coordinate index out of range");
  std::array<Expr, 7> c{};
  c[static_cast<std::size_t>(index)] = Expr::integer(1);
  return VectorField(chart, std::move(c), "d" + std::string(coordinate_names(chart)[static_cast<std::size_t>(index)]));
}

VectorField VectorField::named(std::string name) const { return VectorField(chart_, components_, std::move(name)); }

namespace {

void require_same_chart(const VectorField& a, const VectorField& b)
{
  if (a.chart() != b.chart())
    throw ChartMismatch("vector fields live in different charts (" + std::string(chart_name(a.chart())) + " vs " +
                        std::string(chart_name(b.chart())) + ")");
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b)
{
  require_same_chart(a, b);
  std::array<Expr, 7> c;
  for (std::size_t i = 0; i < 7; ++i) c[i] = a.components_[i] + b.components_[i];
  return VectorField(a.chart_, std::move(c));
}

VectorField VectorField::operator-() const
{
  std::array<Expr, 7> c;
  for (std::size_t i = 0; i < 7; ++i) c[i] = -components_[i];
  return VectorField(chart_, std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const Expr& f, const VectorField& v)
{
  std::array<Expr, 7> c;
  for (std::size_t i = 0; i < 7; ++i) c[i] = f * v.components_[i];
  return VectorField(v.chart_, std::move(c));
}

Vector7 eval_field(const VectorField& field, const Vector7& point)
{
  Vector7 out;
  for (int i = 0; i < 7; ++i) out(i) = evaluate(field[i], point);
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y)
{
  require_same_chart(x, y);
  std::array<Expr, 7> c;
  for (int i = 0; i < 7; ++i) {
    Expr acc;
    for (int j = 0; j < 7; ++j) {
      if (!x[j].is_zero()) acc = acc + x[j] * differentiate(y[i], j);
      if (!y[j].is_zero()) acc = acc - y[j] * differentiate(x[i], j);
    }
    c[static_cast<std::size_t>(i)] = simplify(acc);
  }
  std::string name;
  if (!x.name().empty() && !y.name().empty()) name = "[" + x.name() + "," + y.name() + "]";
  return VectorField(x.chart(), std::move(c), std::move(name));
}

VectorField simplify(const VectorField& field)
{
  std::array<Expr, 7> c;
  for (int i = 0; i < 7; ++i) c[static_cast<std::size_t>(i)] = simplify(field[i]);
  return VectorField(field.chart(), std::move(c), field.name());
}

bool is_zero_field(const VectorField& field)
{
  return std::all_of(field.components().begin(), field.components().end(),
                     [](const Expr& e) { return simplify(e).is_zero(); });
}

bool fields_equivalent(const VectorField& a, const VectorField& b, int samples, double tol, std::uint64_t seed)
{
  if (a.chart() != b.chart()) return false;
  for (int i = 0; i < 7; ++i)
    if (!equivalent(a[i], b[i], samples, tol, seed + static_cast<std::uint64_t>(i))) return false;
  return true;
}

VectorField differentiate(const VectorField& field, int coordinate)
{
  std::array<Expr, 7> c;
  for (int i = 0; i < 7; ++i) c[static_cast<std::size_t>(i)] = simplify(differentiate(field[i], coordinate));
  return VectorField(field.chart(), std::move(c));
}

std::string to_string(const VectorField& field)
{
  std::ostringstream out;
  const auto& names = coordinate_names(field.chart());
  bool first = true;
  for (int i = 0; i < 7; ++i) {
    const Expr s = simplify(field[i]);
    if (s.is_zero()) continue;
    if (!first) out << " + ";
    out << '(' << to_string(s, field.chart()) << ")*d" << names[static_cast<std::size_t>(i)];
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace trident
