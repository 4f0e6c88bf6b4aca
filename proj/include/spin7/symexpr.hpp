#pragma once

// Exact arithmetic over a fixed set of 13 indeterminates: sparse multivariate
// polynomials with rational coefficients, rational functions, and a small
// rewrite engine for substitutions of the form  s -> p  and  s^2k -> p.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spin7/error.hpp"

namespace spin7 {

using Rational = mpq_class;

enum class Symbol : std::uint8_t { A1, A2, A3, B, C, dA1, dA2, dA3, dB, dC, alpha, beta, rho };

inline constexpr std::size_t kSymbolCount = 13;

/// The metric functions, in the order used by every 5-vector in the library.
inline constexpr std::array<Symbol, 5> kFunctionSymbols{Symbol::A1, Symbol::A2, Symbol::A3, Symbol::B,
                                                        Symbol::C};
inline constexpr std::array<Symbol, 5> kDerivativeSymbols{Symbol::dA1, Symbol::dA2, Symbol::dA3, Symbol::dB,
                                                          Symbol::dC};

std::string_view symbol_name(Symbol s);
std::optional<Symbol> symbol_from_name(std::string_view name);

constexpr std::size_t index_of(Symbol s) { return static_cast<std::size_t>(s); }
constexpr bool is_function_symbol(Symbol s) { return index_of(s) <= index_of(Symbol::C); }
constexpr bool is_derivative_symbol(Symbol s) {
  return index_of(s) >= index_of(Symbol::dA1) && index_of(s) <= index_of(Symbol::dC);
}
/// A1 -> dA1, ..., C -> dC.
constexpr Symbol derivative_of(Symbol s) { return static_cast<Symbol>(index_of(s) + 5); }

/// Values for every symbol; symbols a caller does not care about stay zero.
template <typename T>
using Point = std::array<T, kSymbolCount>;

class Monomial {
 public:
  Monomial() { exponents_.fill(0); }

  static Monomial of(Symbol s, unsigned power = 1);

  unsigned exponent(Symbol s) const { return exponents_[index_of(s)]; }
  void set_exponent(Symbol s, unsigned e) { exponents_[index_of(s)] = static_cast<std::uint16_t>(e); }
  unsigned degree() const;
  bool is_one() const { return degree() == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// this / divisor. Requires divisor.divides(*this).
  Monomial divided_by(const Monomial& divisor) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial gcd(const Monomial& a, const Monomial& b);

  /// Graded lexicographic order with A1 the most significant symbol.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

  std::string to_string() const;

 private:
  std::array<std::uint16_t, kSymbolCount> exponents_;
};

namespace detail {

template <typename T>
T rational_as(const Rational& q) {
  if constexpr (std::same_as<T, Rational>) {
    return q;
  } else {
    return static_cast<T>(q.get_num().get_d()) / static_cast<T>(q.get_den().get_d());
  }
}

template <typename T>
T ipow(T base, unsigned e) {
  T result(1);
  while (e != 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

}  // namespace detail

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Poly variable(Symbol s, unsigned power = 1);
  static Poly term(const Rational& c, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero if absent).
  Rational constant_term() const;
  unsigned degree() const;
  unsigned degree_in(Symbol s) const;
  bool contains(Symbol s) const { return degree_in(s) > 0; }
  std::size_t size() const { return terms_.size(); }

  /// Largest term in graded-lex order. Requires !is_zero().
  const std::pair<const Monomial, Rational>& leading_term() const { return *terms_.rbegin(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

  Poly pow(unsigned e) const;
  Poly partial(Symbol s) const;

  /// Quotient q with q*divisor == *this, or nullopt if the division is not exact.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// Greatest monomial dividing every term (one for the zero polynomial).
  Monomial monomial_content() const;
  /// Positive rational c such that this/c has coprime integer coefficients.
  Rational content() const;

  template <typename T>
  T eval(const Point<T>& point) const {
    T sum(0);
    for (const auto& [m, c] : terms_) {
      T term = detail::rational_as<T>(c);
      for (std::size_t i = 0; i < kSymbolCount; ++i) {
        const unsigned e = m.exponent(static_cast<Symbol>(i));
        if (e != 0) term *= detail::ipow(point[i], e);
      }
      sum += term;
    }
    return sum;
  }

  /// Terms in descending graded-lex order, e.g. "A1^2*B - 1/2*C + 3".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero if den is the zero polynomial.
  RatFunc(Poly num, Poly den);

  static RatFunc variable(Symbol s) { return RatFunc(Poly::variable(s)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool contains(Symbol s) const { return num_.contains(s) || den_.contains(s); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  /// Exact equality by cross-multiplication.
  bool operator==(const RatFunc& other) const;

  RatFunc partial(Symbol s) const;
  RatFunc pow(unsigned e) const;

  /// Replaces each listed symbol by the given rational function.
  RatFunc substitute(const std::map<Symbol, RatFunc>& values) const;

  /// Rewrites the function with a denominator that is a monomial in `vars`,
  /// searching exponents up to max_power. Nullopt if no such form exists.
  std::optional<RatFunc> with_monomial_denominator(std::span<const Symbol> vars, unsigned max_power) const;

  /// Evaluates exactly for Rational points; for floating points the
  /// denominator must exceed 1e-300 in magnitude. Throws DivisionByZero.
  template <typename T>
  T eval(const Point<T>& point) const {
    const T d = den_.eval(point);
    if constexpr (std::same_as<T, Rational>) {
      if (d == 0) throw Error(ErrorKind::DivisionByZero, "denominator " + den_.to_string() + " vanishes");
    } else {
      if (!(d > T(1e-300) || d < T(-1e-300)))
        throw Error(ErrorKind::DivisionByZero, "denominator " + den_.to_string() + " vanishes");
    }
    return num_.eval(point) / d;
  }

  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

/// symbol^power -> replacement. power is 1 (bare symbol) or even.
struct RewriteRule {
  Symbol symbol;
  unsigned power;
  Poly replacement;
};

/// Applies the rules in order, repeatedly, until no occurrence is reducible.
/// Throws InvalidRule for an odd power above one and NonTerminating when the
/// rule set cycles or degrees blow past the guard.
Poly rewrite(const Poly& p, std::span<const RewriteRule> rules);
RatFunc rewrite(const RatFunc& f, std::span<const RewriteRule> rules);

/// Double-precision image of a rational function with coefficients rounded
/// once, for hot evaluation loops.
class CompiledRatFunc {
 public:
  CompiledRatFunc() = default;
  explicit CompiledRatFunc(const RatFunc& f);

  template <typename T>
  T eval(const Point<T>& point) const {
    const T d = eval_terms(den_, point);
    if (!(d > T(1e-300) || d < T(-1e-300))) throw Error(ErrorKind::DivisionByZero, "denominator vanishes");
    return eval_terms(num_, point) / d;
  }

 private:
  struct Term {
    long double coefficient;
    std::vector<std::pair<std::uint8_t, unsigned>> factors;
  };

  template <typename T>
  static T eval_terms(const std::vector<Term>& terms, const Point<T>& point) {
    T sum(0);
    for (const Term& term : terms) {
      T v = static_cast<T>(term.coefficient);
      for (const auto& [index, e] : term.factors) v *= detail::ipow(point[index], e);
      sum += v;
    }
    return sum;
  }

  static std::vector<Term> compile(const Poly& p);

  std::vector<Term> num_;
  std::vector<Term> den_;
};

/// Convenience: exact rational point from (symbol, value) pairs.
Point<Rational> rational_point(std::initializer_list<std::pair<Symbol, Rational>> values);
Point<double> double_point(std::initializer_list<std::pair<Symbol, double>> values);

}  // namespace spin7
