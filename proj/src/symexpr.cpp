#include "spin7/symexpr.hpp"

#include <algorithm>
#include <sstream>

namespace spin7 {

namespace {

constexpr std::array<std::string_view, kSymbolCount> kSymbolNames{
    "A1", "A2", "A3", "B", "C", "dA1", "dA2", "dA3", "dB", "dC", "alpha", "beta", "rho"};

constexpr unsigned kRewriteMaxPasses = 64;
constexpr unsigned kRewriteMaxDegree = 256;

}  // namespace

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidRule: return "InvalidRule";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::DerivativeSymbolPresent: return "DerivativeSymbolPresent";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ReductionFailure: return "ReductionFailure";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::SignViolation: return "SignViolation";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::DomainError: return "DomainError";
  }
  return "Error";
}

std::string_view symbol_name(Symbol s) { return kSymbolNames[index_of(s)]; }

std::optional<Symbol> symbol_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (kSymbolNames[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Symbol s, unsigned power) {
  Monomial m;
  m.set_exponent(s, power);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exponents_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    m.exponents_[i] = static_cast<std::uint16_t>(exponents_[i] + other.exponents_[i]);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (exponents_[i] > other.exponents_[i]) return false;
  return true;
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  Monomial m;
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    m.exponents_[i] = static_cast<std::uint16_t>(exponents_[i] - divisor.exponents_[i]);
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kSymbolCount; ++i) m.exponents_[i] = std::min(a.exponents_[i], b.exponents_[i]);
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kSymbolCount; ++i) m.exponents_[i] = std::max(a.exponents_[i], b.exponents_[i]);
  return m;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  return exponents_ <=> other.exponents_;
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    const unsigned e = exponents_[i];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += kSymbolNames[i];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) { add_term(Monomial{}, c); }

Poly Poly::variable(Symbol s, unsigned power) { return term(Rational(1), Monomial::of(s, power)); }

Poly Poly::term(const Rational& c, const Monomial& m) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  Rational q = c;
  q.canonicalize();
  if (q == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, q);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

unsigned Poly::degree_in(Symbol s) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(s));
  return d;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  return p;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::partial(Symbol s) const {
  Poly p;
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exponent(s);
    if (e == 0) continue;
    Monomial dm = m;
    dm.set_exponent(s, e - 1);
    p.add_term(dm, c * e);
  }
  return p;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by the zero polynomial");
  const auto& [lead_m, lead_c] = divisor.leading_term();
  Poly remainder = *this;
  Poly quotient;
  while (!remainder.is_zero()) {
    const auto& [m, c] = remainder.leading_term();
    if (!lead_m.divides(m)) return std::nullopt;
    const Monomial qm = m.divided_by(lead_m);
    const Rational qc = c / lead_c;
    quotient.add_term(qm, qc);
    remainder -= term(qc, qm) * divisor;
  }
  return quotient;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
  return g;
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(1);
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    num_gcd = g;
    mpz_lcm(g.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    den_lcm = g;
  }
  Rational result(num_gcd, den_lcm);
  result.canonicalize();
  return result;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      out << magnitude.get_str();
    } else if (magnitude == 1) {
      out << m.to_string();
    } else {
      out << magnitude.get_str() << '*' << m.to_string();
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= Poly(Rational(1 / den_.constant_term()));
    den_ = Poly(1);
    return;
  }
  const Monomial common = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!common.is_one()) {
    Poly n, d;
    for (const auto& [m, c] : num_.terms()) n += Poly::term(c, m.divided_by(common));
    for (const auto& [m, c] : den_.terms()) d += Poly::term(c, m.divided_by(common));
    num_ = std::move(n);
    den_ = std::move(d);
  }
  Rational scale = den_.content();
  if (den_.leading_term().second < 0) scale = -scale;
  if (scale != 1) {
    const Poly inverse(Rational(1 / scale));
    num_ *= inverse;
    den_ *= inverse;
  }
  // A denominator that divides the numerator exactly leaves a polynomial.
  if (den_.size() <= num_.size()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = Poly(1);
    }
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

bool is_single_term(const Poly& p) { return p.size() == 1; }

}  // namespace

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else if (is_single_term(den_) && is_single_term(other.den_)) {
    const auto& [ma, ca] = den_.leading_term();
    const auto& [mb, cb] = other.den_.leading_term();
    const Monomial l = Monomial::lcm(ma, mb);
    const Rational lc = ca * cb;
    num_ = num_ * Poly::term(Rational(lc / ca), l.divided_by(ma)) +
           other.num_ * Poly::term(Rational(lc / cb), l.divided_by(mb));
    den_ = Poly::term(lc, l);
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  num_ *= other.num_;
  den_ *= other.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero rational function");
  num_ *= other.den_;
  den_ *= other.num_;
  normalize();
  return *this;
}

bool RatFunc::operator==(const RatFunc& other) const { return num_ * other.den_ == other.num_ * den_; }

RatFunc RatFunc::partial(Symbol s) const {
  if (den_.is_constant()) return RatFunc(num_.partial(s));
  return RatFunc(num_.partial(s) * den_ - num_ * den_.partial(s), den_ * den_);
}

RatFunc RatFunc::pow(unsigned e) const { return RatFunc(num_.pow(e), den_.pow(e)); }

namespace {

RatFunc substitute_poly(const Poly& p, const std::map<Symbol, RatFunc>& values) {
  RatFunc sum;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    RatFunc factor{Poly(c)};
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      const auto s = static_cast<Symbol>(i);
      const unsigned e = m.exponent(s);
      if (e == 0) continue;
      if (auto it = values.find(s); it != values.end()) {
        factor *= it->second.pow(e);
      } else {
        kept.set_exponent(s, e);
      }
    }
    sum += factor * RatFunc(Poly::term(Rational(1), kept));
  }
  return sum;
}

}  // namespace

RatFunc RatFunc::substitute(const std::map<Symbol, RatFunc>& values) const {
  return substitute_poly(num_, values) / substitute_poly(den_, values);
}

std::optional<RatFunc> RatFunc::with_monomial_denominator(std::span<const Symbol> vars, unsigned max_power) const {
  Monomial m;
  for (Symbol v : vars) m.set_exponent(v, max_power);
  auto divides_scaled = [&](const Monomial& candidate) {
    return (num_ * Poly::term(Rational(1), candidate)).divide_exact(den_);
  };
  auto quotient = divides_scaled(m);
  if (!quotient) return std::nullopt;
  for (Symbol v : vars) {
    while (m.exponent(v) > 0) {
      Monomial trial = m;
      trial.set_exponent(v, m.exponent(v) - 1);
      auto q = divides_scaled(trial);
      if (!q) break;
      m = trial;
      quotient = std::move(q);
    }
  }
  return RatFunc(std::move(*quotient), Poly::term(Rational(1), m));
}

std::string RatFunc::to_string() const {
  if (den_ == Poly(1)) return num_.to_string();
  auto atomic = [](const Poly& p) {
    if (p.size() != 1) return false;
    const auto& [m, c] = *p.terms().begin();
    return (m.is_one() && c.get_den() == 1) || (c == 1 && m.degree() == 1);
  };
  auto wrap = [&](const Poly& p) { return atomic(p) ? p.to_string() : "(" + p.to_string() + ")"; };
  return wrap(num_) + "/" + wrap(den_);
}

// ---------------------------------------------------------------- rewrite

namespace {

void validate(std::span<const RewriteRule> rules) {
  for (const auto& rule : rules)
    if (rule.power == 0 || (rule.power > 1 && rule.power % 2 != 0))
      throw Error(ErrorKind::InvalidRule, "rule for " + std::string(symbol_name(rule.symbol)) +
                                              " must target the bare symbol or an even power");
}

bool reducible(const Poly& p, std::span<const RewriteRule> rules) {
  for (const auto& rule : rules)
    if (p.degree_in(rule.symbol) >= rule.power) return true;
  return false;
}

Poly apply_rule(const Poly& p, const RewriteRule& rule) {
  Poly out;
  std::map<unsigned, Poly> powers;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(rule.symbol);
    if (e < rule.power) {
      out += Poly::term(c, m);
      continue;
    }
    const unsigned q = e / rule.power;
    Monomial rest = m;
    rest.set_exponent(rule.symbol, e % rule.power);
    auto it = powers.find(q);
    if (it == powers.end()) it = powers.emplace(q, rule.replacement.pow(q)).first;
    out += Poly::term(c, rest) * it->second;
  }
  return out;
}

}  // namespace

Poly rewrite(const Poly& p, std::span<const RewriteRule> rules) {
  validate(rules);
  Poly current = p;
  for (unsigned pass = 0; pass < kRewriteMaxPasses; ++pass) {
    if (!reducible(current, rules)) return current;
    for (const auto& rule : rules) current = apply_rule(current, rule);
    if (current.degree() > kRewriteMaxDegree)
      throw Error(ErrorKind::NonTerminating, "rewrite exceeded degree " + std::to_string(kRewriteMaxDegree));
  }
  if (!reducible(current, rules)) return current;
  throw Error(ErrorKind::NonTerminating, "rewrite rules did not reach a fixpoint (cyclic rule set?)");
}

RatFunc rewrite(const RatFunc& f, std::span<const RewriteRule> rules) {
  Poly num = rewrite(f.num(), rules);
  Poly den = rewrite(f.den(), rules);
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "denominator rewrites to zero: " + f.den().to_string());
  return RatFunc(std::move(num), std::move(den));
}

// ---------------------------------------------------------------- compiled

CompiledRatFunc::CompiledRatFunc(const RatFunc& f) : num_(compile(f.num())), den_(compile(f.den())) {}

std::vector<CompiledRatFunc::Term> CompiledRatFunc::compile(const Poly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Term t{detail::rational_as<long double>(c), {}};
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      const unsigned e = m.exponent(static_cast<Symbol>(i));
      if (e != 0) t.factors.emplace_back(static_cast<std::uint8_t>(i), e);
    }
    out.push_back(std::move(t));
  }
  return out;
}

Point<Rational> rational_point(std::initializer_list<std::pair<Symbol, Rational>> values) {
  Point<Rational> p;
  for (const auto& [s, v] : values) p[index_of(s)] = v;
  return p;
}

Point<double> double_point(std::initializer_list<std::pair<Symbol, double>> values) {
  Point<double> p{};
  for (const auto& [s, v] : values) p[index_of(s)] = v;
  return p;
}

}  // namespace spin7
