#include <doctest.h>

#include <cmath>

#include "spin7/symexpr.hpp"
#include "support.hpp"

using namespace spin7;
using spin7::testing::RandomAlgebra;
using spin7::testing::var;

namespace {

const std::array<Symbol, 3> kSmall{Symbol::A1, Symbol::B, Symbol::C};
const std::array<Symbol, 5> kFunctions{Symbol::A1, Symbol::A2, Symbol::A3, Symbol::B, Symbol::C};

}  // namespace

TEST_CASE("symbol table round-trips names") {
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    const auto s = static_cast<Symbol>(i);
    CHECK(symbol_from_name(symbol_name(s)) == s);
  }
  CHECK_FALSE(symbol_from_name("D").has_value());
  CHECK(derivative_of(Symbol::C) == Symbol::dC);
  CHECK(is_derivative_symbol(Symbol::dA2));
  CHECK_FALSE(is_function_symbol(Symbol::alpha));
}

TEST_CASE("monomial order is graded lexicographic with A1 first") {
  const Monomial a1 = Monomial::of(Symbol::A1), a2sq = Monomial::of(Symbol::A2, 2), b = Monomial::of(Symbol::B);
  CHECK(a1 < a2sq);
  CHECK(b < a1);
  CHECK(Monomial::lcm(a1, a2sq) == a1 * a2sq);
  CHECK(Monomial::gcd(a1 * b, a2sq * b) == b);
  CHECK((a1 * b).divided_by(b) == a1);
}

TEST_CASE("polynomial arithmetic examples") {
  const Poly A1 = Poly::variable(Symbol::A1), A2 = Poly::variable(Symbol::A2), A3 = Poly::variable(Symbol::A3);
  const Poly B = Poly::variable(Symbol::B), C = Poly::variable(Symbol::C);
  CHECK((A1 + (-A1)).is_zero());
  CHECK((A2 + A3) * (A2 - A3) == A2.pow(2) - A3.pow(2));
  const Poly constraint = (B.pow(2) + C.pow(2)) - Poly(2) * A2.pow(2);
  CHECK(constraint.size() == 3);
  CHECK(constraint.to_string() == "-2*A2^2 + B^2 + C^2");
}

TEST_CASE("zero coefficients are never stored") {
  const Poly x = Poly::variable(Symbol::A1);
  const Poly p = x + Poly(3) - x;
  CHECK(p.size() == 1);
  CHECK(p.is_constant());
  CHECK(p.constant_term() == 3);
}

TEST_CASE("partial derivatives") {
  const Poly A1 = Poly::variable(Symbol::A1), B = Poly::variable(Symbol::B), C = Poly::variable(Symbol::C);
  CHECK((A1.pow(2) * B).partial(Symbol::A1) == Poly(2) * A1 * B);
  CHECK(C.partial(Symbol::A1).is_zero());
  CHECK((B.pow(2) * C.pow(2)).partial(Symbol::B) == Poly(2) * B * C.pow(2));
}

TEST_CASE("partial derivatives agree with central differences") {
  RandomAlgebra gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly p = gen.poly(kSmall, 4, 3);
    const Point<Rational> q = gen.point(kSmall);
    for (Symbol s : kSmall) {
      // For a polynomial of degree <= 3 in s the symmetric difference
      // quotient is exact up to an h^2 term we control exactly.
      const Rational h(1, 1000);
      Point<Rational> plus = q, minus = q;
      plus[index_of(s)] += h;
      minus[index_of(s)] -= h;
      const Rational fd = (p.eval(plus) - p.eval(minus)) / (2 * h);
      const Rational exact = p.partial(s).eval(q);
      const Rational third = p.partial(s).partial(s).partial(s).eval(q);
      CHECK(fd - exact == third * h * h / 6);
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  RandomAlgebra gen;
  for (int trial = 0; trial < 1000; ++trial) {
    const Poly a = gen.poly(kSmall), b = gen.poly(kSmall), c = gen.poly(kSmall);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
  }
}

TEST_CASE("exact division") {
  const Poly x = Poly::variable(Symbol::A2), y = Poly::variable(Symbol::A3);
  const Poly product = (x + y) * (x - Poly(2) * y + Poly(1));
  const auto q = product.divide_exact(x + y);
  REQUIRE(q.has_value());
  CHECK(*q == x - Poly(2) * y + Poly(1));
  CHECK_FALSE((product + Poly(1)).divide_exact(x + y).has_value());
}

TEST_CASE("rational function construction and normalisation") {
  CHECK_THROWS_AS(RatFunc(Poly(1), Poly()), Error);
  try {
    RatFunc(Poly(1), Poly());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
  const RatFunc half(Poly(Rational(3)), Poly(Rational(6)));
  CHECK(half.is_polynomial());
  CHECK(half == RatFunc(Poly(Rational(1, 2))));
  const RatFunc f(Poly::variable(Symbol::A1, 2), Poly::variable(Symbol::A1) * Poly(-2));
  CHECK(f == RatFunc(Poly::variable(Symbol::A1) * Poly(Rational(-1, 2))));
  CHECK(f.den().leading_term().second > 0);
}

TEST_CASE("rational function evaluation examples") {
  const RatFunc rho = var(Symbol::rho), a2 = var(Symbol::alpha).pow(2);
  CHECK((RatFunc(1) / rho).eval(rational_point({{Symbol::rho, 4}})) == Rational(1, 4));
  const RatFunc G = RatFunc(1) / rho + RatFunc(1) / (rho - a2) + RatFunc(1) / (rho + a2);
  CHECK(G.eval(rational_point({{Symbol::rho, 2}, {Symbol::alpha, 1}})) == Rational(11, 6));
  const RatFunc ratio = var(Symbol::A1) / var(Symbol::A3);
  CHECK(ratio.eval(rational_point({{Symbol::A1, 0}, {Symbol::A3, 1}})) == 0);
  CHECK_THROWS_AS(ratio.eval(rational_point({{Symbol::A1, 1}, {Symbol::A3, 0}})), Error);
  CHECK_THROWS_AS(ratio.eval(double_point({{Symbol::A1, 1.0}})), Error);
}

TEST_CASE("cross-multiplication equality agrees with evaluation") {
  RandomAlgebra gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly n = gen.poly(kFunctions, 3, 2), d = gen.poly(kFunctions, 2, 1) + Poly(1);
    if (d.is_zero()) continue;
    const Poly k = gen.poly(kFunctions, 2, 1) + Poly(2);
    if (k.is_zero()) continue;
    const RatFunc f(n, d), same(n * k, d * k), different(n + Poly(1), d);
    REQUIRE(f == same);
    REQUIRE_FALSE(f == different);
    int agreeing = 0;
    for (int i = 0; i < 200 && agreeing < 20; ++i) {
      const Point<Rational> p = gen.point(kFunctions);
      if (d.eval(p) == 0 || (d * k).eval(p) == 0) continue;
      REQUIRE(f.eval(p) == same.eval(p));
      ++agreeing;
    }
    CHECK(agreeing == 20);
  }
}

TEST_CASE("field operations and derivatives of quotients") {
  const RatFunc x = var(Symbol::A1), y = var(Symbol::B);
  const RatFunc f = (x * x + RatFunc(1)) / (y - x);
  CHECK(f * (RatFunc(1) / f) == RatFunc(1));
  CHECK(f - f == RatFunc(0));
  const RatFunc df = f.partial(Symbol::A1);
  CHECK(df == (RatFunc(2) * x * (y - x) + (x * x + RatFunc(1))) / (y - x).pow(2));
}

TEST_CASE("substitution") {
  const RatFunc x = var(Symbol::A1), y = var(Symbol::A2);
  const RatFunc f = x.pow(2) / y;
  const RatFunc g = f.substitute({{Symbol::A1, y + RatFunc(1)}, {Symbol::A2, RatFunc(2)}});
  CHECK(g == (y + RatFunc(1)).pow(2) / RatFunc(2));
}

TEST_CASE("rewrite examples") {
  const RatFunc A1 = var(Symbol::A1), A2 = var(Symbol::A2), A3 = var(Symbol::A3), B = var(Symbol::B),
                C = var(Symbol::C), alpha = var(Symbol::alpha);
  const Poly a2 = Poly::variable(Symbol::A2), al = Poly::variable(Symbol::alpha);
  const std::array<RewriteRule, 1> flip{RewriteRule{Symbol::A3, 1, -a2}};
  CHECK(rewrite(A2 + A3, flip).is_zero());

  const std::array<RewriteRule, 2> squares{RewriteRule{Symbol::B, 2, a2.pow(2) + al.pow(2)},
                                          RewriteRule{Symbol::C, 2, a2.pow(2) - al.pow(2)}};
  CHECK(rewrite(B.pow(2) + C.pow(2) - RatFunc(2) * A2.pow(2), squares).is_zero());
  const RatFunc term = A1.pow(2) * (B.pow(2) + C.pow(2)) / (B.pow(2) * C.pow(2));
  CHECK(rewrite(term, squares) == RatFunc(2) * A1.pow(2) * A2.pow(2) / (A2.pow(4) - alpha.pow(4)));
  // Odd powers of B survive an even-power rule.
  CHECK(rewrite(B.pow(3), squares) == B * (A2.pow(2) + alpha.pow(2)));
}

TEST_CASE("rewrite is idempotent") {
  RandomAlgebra gen(3);
  const Poly a2 = Poly::variable(Symbol::A2), al = Poly::variable(Symbol::alpha);
  const std::array<RewriteRule, 3> rules{RewriteRule{Symbol::A3, 1, -a2},
                                        RewriteRule{Symbol::B, 2, a2.pow(2) + al.pow(2)},
                                        RewriteRule{Symbol::C, 2, a2.pow(2) - al.pow(2)}};
  for (int trial = 0; trial < 100; ++trial) {
    const Poly p = gen.poly(kFunctions, 4, 3);
    const Poly once = rewrite(p, rules);
    REQUIRE(rewrite(once, rules) == once);
  }
}

TEST_CASE("rewrite rejects bad or cyclic rules") {
  const Poly b = Poly::variable(Symbol::B), c = Poly::variable(Symbol::C);
  const std::array<RewriteRule, 1> odd{RewriteRule{Symbol::B, 3, c}};
  CHECK_THROWS_AS(rewrite(b, odd), Error);
  const std::array<RewriteRule, 2> cycle{RewriteRule{Symbol::B, 1, c}, RewriteRule{Symbol::C, 1, b}};
  try {
    rewrite(b, cycle);
    FAIL("expected NonTerminating");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonTerminating);
  }
  const std::array<RewriteRule, 1> kill{RewriteRule{Symbol::B, 1, Poly()}};
  try {
    rewrite(RatFunc(Poly(1), b), kill);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("monomial denominators") {
  const RatFunc x = var(Symbol::A1), y = var(Symbol::B);
  const RatFunc f = (x * x - y * y) / ((x - y) * x * y);
  const auto g = f.with_monomial_denominator(kFunctions, 4);
  REQUIRE(g.has_value());
  CHECK(g->den().size() == 1);
  CHECK(*g == f);
  CHECK_FALSE((RatFunc(1) / (x + y)).with_monomial_denominator(kFunctions, 4).has_value());
}

TEST_CASE("compiled evaluation matches exact evaluation") {
  RandomAlgebra gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const RatFunc f(gen.poly(kFunctions, 4, 2), gen.poly(kFunctions, 2, 1) + Poly(10));
    const Point<Rational> q = gen.point(kFunctions);
    if (f.den().eval(q) == 0) continue;
    Point<double> p{};
    for (std::size_t i = 0; i < kSymbolCount; ++i) p[i] = q[i].get_d();
    const double exact = f.eval(q).get_d();
    CHECK(CompiledRatFunc(f).eval(p) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(f.eval(p) == doctest::Approx(exact).epsilon(1e-12));
  }
}
