#include "spin7/coframe.hpp"

#include <bit>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spin7 {

namespace {

constexpr std::array<std::string_view, 6> kHorizontalNames{"1", "w1", "w2", "w3", "w", "vol"};
constexpr std::array<std::string_view, 4> kVerticalNames{"dt", "e1", "e2", "e3"};

constexpr std::size_t idx(Horizontal h) { return static_cast<std::size_t>(h); }

constexpr HorizontalTable make_table() {
  HorizontalTable t{};
  for (Horizontal a : kHorizontalSymbols) {
    t[idx(Horizontal::unit)][idx(a)] = {1, a};
    t[idx(a)][idx(Horizontal::unit)] = {1, a};
  }
  t[idx(Horizontal::w1)][idx(Horizontal::w1)] = {-8, Horizontal::vol};
  t[idx(Horizontal::w2)][idx(Horizontal::w2)] = {-8, Horizontal::vol};
  t[idx(Horizontal::w3)][idx(Horizontal::w3)] = {-8, Horizontal::vol};
  t[idx(Horizontal::w)][idx(Horizontal::w)] = {8, Horizontal::vol};
  return t;
}

constexpr HorizontalTable kHorizontalTable = make_table();

// Sign of (wedge of generators in a) ^ (wedge of generators in b), both
// sorted ascending, relative to the sorted union.
int merge_sign(std::uint8_t a, std::uint8_t b) {
  int swaps = 0;
  for (int i = 0; i < 8; ++i)
    if (a & (1u << i)) swaps += std::popcount(static_cast<unsigned>(b & ((1u << i) - 1u)));
  return swaps % 2 == 0 ? 1 : -1;
}

// ---- raw algebra on eta4..eta7 for the oracle

using RawForm = std::map<std::uint8_t, int>;

RawForm raw_wedge(const RawForm& a, const RawForm& b) {
  RawForm out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma & mb) continue;
      out[ma | mb] += merge_sign(ma, mb) * ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

RawForm raw_expansion(Horizontal h) {
  // bits: eta4 = 1, eta5 = 2, eta6 = 4, eta7 = 8
  constexpr std::uint8_t e45 = 0b0011, e67 = 0b1100, e46 = 0b0101, e57 = 0b1010, e47 = 0b1001, e56 = 0b0110;
  switch (h) {
    case Horizontal::unit: return {{0, 1}};
    case Horizontal::w1: return {{e45, 2}, {e67, -2}};
    case Horizontal::w2: return {{e46, 2}, {e57, 2}};  // 2(e46 - e75)
    case Horizontal::w3: return {{e47, 2}, {e56, -2}};
    case Horizontal::w: return {{e45, 2}, {e67, 2}};
    case Horizontal::vol: return {{0b1111, 1}};
  }
  return {};
}

HorizontalProduct identify(const RawForm& product) {
  if (product.empty()) return {};
  for (Horizontal h : kHorizontalSymbols) {
    const RawForm basis = raw_expansion(h);
    if (basis.size() != product.size()) continue;
    const auto& [m0, c0] = *basis.begin();
    auto it = product.find(m0);
    if (it == product.end() || it->second % c0 != 0) continue;
    const int scale = it->second / c0;
    bool match = true;
    for (const auto& [m, c] : basis) {
      auto jt = product.find(m);
      if (jt == product.end() || jt->second != scale * c) match = false;
    }
    if (match) return {scale, h};
  }
  throw std::logic_error("horizontal product leaves the closed subalgebra");
}

// d of a single vertical generator (bit index 0..3), as a form with
// constant coefficients.
Form d_vertical_generator(int bit) {
  if (bit == 0) return Form(2);
  const int i = bit;  // eta_i
  const int j = i % 3 + 1;
  const int k = j % 3 + 1;
  // d eta_i = w_i - 2 eta_j ^ eta_k
  return omega(i) - RatFunc(2) * wedge(eta(j), eta(k));
}

Form d_horizontal(Horizontal h) {
  switch (h) {
    case Horizontal::w1:
    case Horizontal::w2:
    case Horizontal::w3: {
      const int i = static_cast<int>(idx(h));
      const int j = i % 3 + 1;
      const int k = j % 3 + 1;
      // d w_i = 2 w_j ^ eta_k - 2 eta_j ^ w_k
      return RatFunc(2) * wedge(omega(j), eta(k)) - RatFunc(2) * wedge(eta(j), omega(k));
    }
    default: return Form(degree(h) + 1);
  }
}

Form d_basis_uncached(BasisElement e) {
  Form result(e.degree() + 1);
  std::vector<int> bits;
  for (int b = 0; b < 4; ++b)
    if (e.vertical & (1u << b)) bits.push_back(b);
  const Form tail = Form::basis({0, e.horizontal});
  for (std::size_t n = 0; n < bits.size(); ++n) {
    std::uint8_t before = 0, after = 0;
    for (std::size_t m = 0; m < n; ++m) before |= static_cast<std::uint8_t>(1u << bits[m]);
    for (std::size_t m = n + 1; m < bits.size(); ++m) after |= static_cast<std::uint8_t>(1u << bits[m]);
    Form piece = wedge(wedge(Form::basis({before, Horizontal::unit}), d_vertical_generator(bits[n])),
                       Form::basis({after, e.horizontal}));
    if (n % 2 == 1) piece = -piece;
    result += piece;
  }
  Form horizontal_part = wedge(Form::basis({e.vertical, Horizontal::unit}), d_horizontal(e.horizontal));
  if (bits.size() % 2 == 1) horizontal_part = -horizontal_part;
  result += horizontal_part;
  return result;
}

const Form& d_basis(BasisElement e) {
  static const std::map<BasisElement, Form> cache = [] {
    std::map<BasisElement, Form> m;
    for (std::uint8_t v = 0; v < 16; ++v)
      for (Horizontal h : kHorizontalSymbols) {
        const BasisElement b{v, h};
        if (b.degree() < 8) m.emplace(b, d_basis_uncached(b));
      }
    return m;
  }();
  return cache.at(e);
}

}  // namespace

std::string_view horizontal_name(Horizontal h) { return kHorizontalNames[idx(h)]; }

const HorizontalTable& horizontal_table() { return kHorizontalTable; }

HorizontalTable horizontal_oracle() {
  HorizontalTable t{};
  for (Horizontal a : kHorizontalSymbols)
    for (Horizontal b : kHorizontalSymbols) t[idx(a)][idx(b)] = identify(raw_wedge(raw_expansion(a), raw_expansion(b)));
  return t;
}

int BasisElement::degree() const { return std::popcount(static_cast<unsigned>(vertical)) + spin7::degree(horizontal); }

std::string BasisElement::label() const {
  std::string out;
  for (int b = 0; b < 4; ++b) {
    if (!(vertical & (1u << b))) continue;
    if (!out.empty()) out += '^';
    out += kVerticalNames[static_cast<std::size_t>(b)];
  }
  if (horizontal != Horizontal::unit) {
    if (!out.empty()) out += '^';
    out += horizontal_name(horizontal);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- Form

Form Form::basis(BasisElement e, const RatFunc& coefficient) {
  Form f(e.degree());
  f.add(e, coefficient);
  return f;
}

RatFunc Form::coefficient(BasisElement e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RatFunc() : it->second;
}

void Form::add(BasisElement e, const RatFunc& c) {
  assert(e.degree() == degree_);
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form& Form::operator+=(const Form& other) {
  if (terms_.empty()) degree_ = other.degree_;
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

Form& Form::operator-=(const Form& other) { return *this += -other; }

Form Form::operator-() const {
  Form out(degree_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Form operator*(const RatFunc& c, const Form& f) {
  Form out(f.degree_);
  if (c.is_zero()) return out;
  for (const auto& [e, coeff] : f.terms_) out.add(e, c * coeff);
  return out;
}

std::string Form::to_string() const {
  std::ostringstream out;
  for (const auto& [e, c] : terms_) out << c.to_string() << "  " << e.label() << '\n';
  return out.str();
}

Form wedge(const Form& a, const Form& b) {
  const int deg = a.degree() + b.degree();
  if (deg > 8) throw Error(ErrorKind::DegreeOverflow, "wedge of degrees " + std::to_string(a.degree()) + " and " +
                                                          std::to_string(b.degree()) + " exceeds 8");
  Form out(deg);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      if (ea.vertical & eb.vertical) continue;
      // Horizontal symbols have even degree, so they commute past verticals.
      const HorizontalProduct hp = kHorizontalTable[idx(ea.horizontal)][idx(eb.horizontal)];
      if (hp.coefficient == 0) continue;
      const int sign = merge_sign(ea.vertical, eb.vertical) * hp.coefficient;
      out.add({static_cast<std::uint8_t>(ea.vertical | eb.vertical), hp.result}, RatFunc(sign) * ca * cb);
    }
  return out;
}

Form ext_d(const Form& f) {
  Form out(f.degree() + 1);
  for (const auto& [e, c] : f.terms()) {
    for (Symbol s : kDerivativeSymbols)
      if (c.contains(s))
        throw Error(ErrorKind::DerivativeSymbolPresent,
                    "coefficient " + c.to_string() + " of " + e.label() + " already contains " +
                        std::string(symbol_name(s)));
    if (!(e.vertical & vertical::dt)) {
      const BasisElement with_dt{static_cast<std::uint8_t>(e.vertical | vertical::dt), e.horizontal};
      for (Symbol x : kFunctionSymbols) {
        RatFunc dc = c.partial(x);
        if (!dc.is_zero()) out.add(with_dt, dc * RatFunc::variable(derivative_of(x)));
      }
    }
    if (e.degree() < 8) out += c * d_basis(e);
  }
  return out;
}

std::map<BasisElement, double> eval_numeric(const Form& f, const Point<double>& point) {
  std::map<BasisElement, double> out;
  for (const auto& [e, c] : f.terms()) out.emplace(e, c.eval(point));
  return out;
}

Form dt_form() { return Form::basis({vertical::dt, Horizontal::unit}); }

Form eta(int i) {
  if (i < 1 || i > 3) throw std::out_of_range("eta index must be 1..3");
  return Form::basis({static_cast<std::uint8_t>(1u << i), Horizontal::unit});
}

Form omega(int i) {
  if (i < 1 || i > 3) throw std::out_of_range("omega index must be 1..3");
  return Form::basis({0, static_cast<Horizontal>(i)});
}

Form omega_kahler() { return Form::basis({0, Horizontal::w}); }

Form horizontal_volume() { return Form::basis({0, Horizontal::vol}); }

}  // namespace spin7
