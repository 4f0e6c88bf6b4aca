#pragma once

#include <random>

#include "spin7/symexpr.hpp"

namespace spin7::testing {

// Deterministic random polynomials and points over a handful of symbols.
class RandomAlgebra {
 public:
  explicit RandomAlgebra(std::uint64_t seed = 20261015) : rng_(seed) {}

  Rational rational(int span = 5) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    Rational q(num(rng_), den(rng_));
    q.canonicalize();
    return q;
  }

  Rational nonzero_rational(int span = 5) {
    Rational q;
    do q = rational(span);
    while (q == 0);
    return q;
  }

  Poly poly(std::span<const Symbol> symbols, int terms = 3, unsigned max_exponent = 2) {
    std::uniform_int_distribution<unsigned> exponent(0, max_exponent);
    Poly p;
    for (int i = 0; i < terms; ++i) {
      Monomial m;
      for (Symbol s : symbols) m.set_exponent(s, exponent(rng_));
      p += Poly::term(rational(), m);
    }
    return p;
  }

  Point<Rational> point(std::span<const Symbol> symbols) {
    Point<Rational> p;
    for (auto& v : p) v = 0;
    for (Symbol s : symbols) p[index_of(s)] = nonzero_rational(7);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline RatFunc var(Symbol s) { return RatFunc::variable(s); }

}  // namespace spin7::testing
