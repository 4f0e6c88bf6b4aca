#include "spin7/structures.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace spin7 {

namespace {

RatFunc var(Symbol s) { return RatFunc::variable(s); }

const RatFunc A1 = var(Symbol::A1);
const RatFunc A2 = var(Symbol::A2);
const RatFunc A3 = var(Symbol::A3);
const RatFunc B = var(Symbol::B);
const RatFunc C = var(Symbol::C);

RatFunc sq(const RatFunc& x) { return x * x; }

// e^0 = dt, e^i = A_i eta_i.
Form coframe_e(int i) {
  switch (i) {
    case 0: return dt_form();
    case 1: return A1 * eta(1);
    case 2: return A2 * eta(2);
    case 3: return A3 * eta(3);
    default: throw std::out_of_range("coframe index");
  }
}

Form e2form(int i, int j) { return wedge(coframe_e(i), coframe_e(j)); }

// Exponent bound for the monomial-denominator search over A1..C.
constexpr unsigned kMonomialSearchPower = 4;

}  // namespace

// ---------------------------------------------------------------- OdeSystem

std::map<Symbol, RatFunc> OdeSystem::substitution() const {
  std::map<Symbol, RatFunc> m;
  for (std::size_t i = 0; i < 5; ++i) m.emplace(kDerivativeSymbols[i], rhs[i]);
  return m;
}

OdeSystem OdeSystem::with_bc_equal() const {
  const std::array<RewriteRule, 1> rules{RewriteRule{Symbol::C, 1, Poly::variable(Symbol::B)}};
  OdeSystem out;
  for (std::size_t i = 0; i < 5; ++i) out.rhs[i] = rewrite(rhs[i], rules);
  return out;
}

OdeSystem OdeSystem::reference() {
  const RatFunc two(2);
  OdeSystem s;
  s.rhs[0] = (sq(A2 - A3) - sq(A1)) / (A2 * A3) + sq(A1) * (sq(B) + sq(C)) / (sq(B) * sq(C));
  s.rhs[1] = (sq(A1) - sq(A2) + sq(A3)) / (A1 * A3) - (sq(B) + sq(C) - two * sq(A2)) / (B * C);
  s.rhs[2] = (sq(A1) + sq(A2) - sq(A3)) / (A1 * A2) - (sq(B) + sq(C) - two * sq(A3)) / (B * C);
  s.rhs[3] = -(C * A1 + B * A2 + B * A3) / (B * C) - (sq(C) - sq(B)) * (A2 + A3) / (two * A2 * A3 * C);
  s.rhs[4] = -(B * A1 + C * A2 + C * A3) / (B * C) - (sq(B) - sq(C)) * (A2 + A3) / (two * A2 * A3 * B);
  return s;
}

OdeSystem OdeSystem::reference_bc_equal() {
  const RatFunc two(2);
  OdeSystem s;
  s.rhs[0] = two * sq(A1) / sq(B) + (sq(A2 - A3) - sq(A1)) / (A2 * A3);
  s.rhs[1] = two * sq(A2) / sq(B) + (sq(A3 - A1) - sq(A2)) / (A1 * A3);
  s.rhs[2] = two * sq(A3) / sq(B) + (sq(A1 - A2) - sq(A3)) / (A1 * A2);
  s.rhs[3] = -(A1 + A2 + A3) / B;
  s.rhs[4] = s.rhs[3];
  return s;
}

CompiledOdeSystem::CompiledOdeSystem(const OdeSystem& sys) {
  for (std::size_t i = 0; i < 5; ++i) rhs_[i] = CompiledRatFunc(sys.rhs[i]);
}

// ---------------------------------------------------------------- forms

Form build_phi() {
  const RatFunc quarter = RatFunc(Poly(Rational(1, 4)));
  const RatFunc half = RatFunc(Poly(Rational(1, 2)));
  const Form e01_minus_e23 = e2form(0, 1) - e2form(2, 3);

  Form phi = wedge(e2form(0, 1), e2form(2, 3));
  phi += sq(B) * sq(C) * horizontal_volume();
  phi += quarter * (sq(B) + sq(C)) * wedge(e01_minus_e23, omega(1));
  phi += quarter * (sq(B) - sq(C)) * wedge(e01_minus_e23, omega_kahler());
  phi += half * B * C * wedge(e2form(0, 2) - e2form(3, 1), omega(2));
  phi += half * B * C * wedge(e2form(0, 3) - e2form(1, 2), omega(3));
  return phi;
}

Form build_omega_bar(int k) {
  const RatFunc quarter = RatFunc(Poly(Rational(1, 4)));
  const RatFunc half = RatFunc(Poly(Rational(1, 2)));
  switch (k) {
    case 1:
      // e45 - e67 expressed through w1 and w.
      return -e2form(0, 1) + e2form(2, 3) + quarter * (sq(B) + sq(C)) * omega(1) +
             quarter * (sq(B) - sq(C)) * omega_kahler();
    case 2: return e2form(0, 2) + e2form(1, 3) - half * B * C * omega(2);
    case 3: return -e2form(0, 3) + e2form(1, 2) - half * B * C * omega(3);
    default: throw Error(ErrorKind::InvalidSpec, "omega_bar index must be 1..3");
  }
}

const Form& phi_differential() {
  static const Form dphi = ext_d(build_phi());
  return dphi;
}

// ---------------------------------------------------------------- derivation

namespace {

using Row = std::array<Poly, 6>;  // coefficients of dA1..dC, then the constant

Row linear_row(const RatFunc& coefficient) {
  // The denominator carries no derivative symbols, so num = 0 is the equation.
  const Poly& num = coefficient.num();
  Row row;
  Poly rest = num;
  for (std::size_t j = 0; j < 5; ++j) {
    const Symbol ds = kDerivativeSymbols[j];
    row[j] = num.partial(ds);
    for (Symbol other : kDerivativeSymbols)
      if (row[j].contains(other))
        throw Error(ErrorKind::SingularSystem, "d(Phi) is not affine in the derivative symbols");
    rest -= row[j] * Poly::variable(ds);
  }
  row[5] = std::move(rest);
  return row;
}

Poly exact_quotient(const Poly& p, const Poly& d) {
  auto q = p.divide_exact(d);
  if (!q) throw Error(ErrorKind::SingularSystem, "Bareiss step lost exactness");
  return std::move(*q);
}

}  // namespace

OdeSystem derive_ode() {
  std::vector<Row> rows;
  for (const auto& [e, c] : phi_differential().terms()) rows.push_back(linear_row(c));
  constexpr std::size_t n = 5;
  if (rows.size() < n)
    throw Error(ErrorKind::SingularSystem, "d(Phi) has only " + std::to_string(rows.size()) + " components");

  // Fraction-free forward elimination with row pivoting.
  Poly previous(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> pivot;
    for (std::size_t r = k; r < rows.size(); ++r) {
      if (rows[r][k].is_zero()) continue;
      if (!pivot || rows[r][k].size() < rows[*pivot][k].size()) pivot = r;
    }
    if (!pivot) throw Error(ErrorKind::SingularSystem, "no pivot for " + std::string(symbol_name(kDerivativeSymbols[k])));
    std::swap(rows[k], rows[*pivot]);
    for (std::size_t r = k + 1; r < rows.size(); ++r) {
      for (std::size_t j = k + 1; j < 6; ++j)
        rows[r][j] = exact_quotient(rows[k][k] * rows[r][j] - rows[r][k] * rows[k][j], previous);
      rows[r][k] = Poly();
    }
    previous = rows[k][k];
  }
  for (std::size_t r = n; r < rows.size(); ++r)
    if (!rows[r][5].is_zero()) throw Error(ErrorKind::SingularSystem, "d(Phi) = 0 is inconsistent");

  std::array<RatFunc, n> x;
  for (std::size_t k = n; k-- > 0;) {
    RatFunc acc(rows[k][5]);
    for (std::size_t j = k + 1; j < n; ++j) acc += RatFunc(rows[k][j]) * x[j];
    x[k] = -acc / RatFunc(rows[k][k]);
  }

  OdeSystem sys;
  for (std::size_t i = 0; i < n; ++i) {
    auto simplified = x[i].with_monomial_denominator(kFunctionSymbols, kMonomialSearchPower);
    sys.rhs[i] = simplified ? std::move(*simplified) : std::move(x[i]);
  }
  return sys;
}

bool verify_lemma1(const OdeSystem& sys) {
  const auto subst = sys.substitution();
  for (const auto& [e, c] : phi_differential().terms())
    if (!c.substitute(subst).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- ansatz

std::vector<RewriteRule> ansatz_rules() {
  const Poly a2sq = Poly::variable(Symbol::A2, 2);
  const Poly alpha_sq = Poly::variable(Symbol::alpha, 2);
  return {
      {Symbol::A3, 1, -Poly::variable(Symbol::A2)},
      {Symbol::B, 2, a2sq + alpha_sq},
      {Symbol::C, 2, a2sq - alpha_sq},
  };
}

namespace {

void require_equal(const RatFunc& got, const RatFunc& expected, const std::string& what) {
  if (!(got == expected))
    throw Error(ErrorKind::ReductionFailure, what + ": residual " + (got - expected).to_string());
}

}  // namespace

AnsatzReport reduce_ansatz(const OdeSystem& sys) {
  const RatFunc two(2);
  const auto full = ansatz_rules();
  const std::array<RewriteRule, 1> antisymmetric{full[0]};

  AnsatzReport report;
  report.sum_a2_a3 = rewrite(sys[1] + sys[2], antisymmetric);
  require_equal(report.sum_a2_a3, RatFunc(-2) * (sq(B) + sq(C) - two * sq(A2)) / (B * C), "A2' + A3'");

  report.b2_minus_c2_rate = two * B * sys[3] - two * C * sys[4];
  const auto cofactor = report.b2_minus_c2_rate.num().divide_exact(Poly::variable(Symbol::A2) + Poly::variable(Symbol::A3));
  if (!cofactor)
    throw Error(ErrorKind::ReductionFailure,
                "(B^2 - C^2)' is not a multiple of A2 + A3: " + report.b2_minus_c2_rate.to_string());
  report.b2_minus_c2_cofactor = RatFunc(*cofactor, report.b2_minus_c2_rate.den());
  require_equal(rewrite(report.b2_minus_c2_rate, antisymmetric), RatFunc(), "(B^2 - C^2)' on A3 = -A2");

  const RatFunc alpha = var(Symbol::alpha);
  report.reduced_a1 = rewrite(sys[0], full);
  require_equal(report.reduced_a1,
                RatFunc(-4) + sq(A1) / sq(A2) + two * sq(A1) * sq(A2) / (sq(sq(A2)) - sq(sq(alpha))), "reduced A1'");

  report.reduced_a2_squared = rewrite(two * A2 * sys[1], full);
  require_equal(report.reduced_a2_squared, RatFunc(-2) * A1, "reduced (A2^2)'");
  return report;
}

// ---------------------------------------------------------------- closure

namespace {

struct CompiledForm {
  std::vector<std::pair<BasisElement, CompiledRatFunc>> components;
};

const CompiledForm& compiled_differential(ClosedForm which) {
  static const std::array<CompiledForm, 4> cache = [] {
    std::array<CompiledForm, 4> out;
    const std::array<Form, 4> forms{phi_differential(), ext_d(build_omega_bar(1)), ext_d(build_omega_bar(2)),
                                    ext_d(build_omega_bar(3))};
    for (std::size_t i = 0; i < 4; ++i)
      for (const auto& [e, c] : forms[i].terms()) out[i].components.emplace_back(e, CompiledRatFunc(c));
    return out;
  }();
  return cache[static_cast<std::size_t>(which)];
}

}  // namespace

namespace {

template <typename T>
Point<T> closure_point(const std::array<T, 5>& values, const OdeSystem& sys) {
  const auto derivatives = CompiledOdeSystem(sys)(values);
  Point<T> p{};
  for (std::size_t i = 0; i < 5; ++i) {
    p[index_of(kFunctionSymbols[i])] = values[i];
    p[index_of(kDerivativeSymbols[i])] = derivatives[i];
  }
  return p;
}

}  // namespace

std::map<BasisElement, double> closure_components(ClosedForm which, const std::array<double, 5>& values,
                                                  const OdeSystem& sys) {
  const Point<double> p = closure_point(values, sys);
  std::map<BasisElement, double> out;
  for (const auto& [e, c] : compiled_differential(which).components) out.emplace(e, c.eval(p));
  return out;
}

namespace {

template <typename T>
ClosureReport closure_report_impl(const std::array<T, 5>& values, const OdeSystem& sys) {
  const Point<T> p = closure_point(values, sys);
  auto max_abs = [&](ClosedForm which) {
    T m = 0;
    for (const auto& [e, c] : compiled_differential(which).components) m = std::max(m, std::abs(c.eval(p)));
    return static_cast<double>(m);
  };
  return {max_abs(ClosedForm::phi), max_abs(ClosedForm::omega1), max_abs(ClosedForm::omega2),
          max_abs(ClosedForm::omega3)};
}

}  // namespace

ClosureReport closure_report(const std::array<double, 5>& values, const OdeSystem& sys) {
  return closure_report_impl(values, sys);
}

ClosureReport closure_report(const std::array<long double, 5>& values, const OdeSystem& sys) {
  return closure_report_impl(values, sys);
}

}  // namespace spin7
