#pragma once

// Graded exterior algebra of the cone coframe.
//
// A basis element is a wedge of vertical generators dt, e1, e2, e3 (the
// characteristic forms eta_i) followed by one horizontal symbol from the
// closed subalgebra {1, w1, w2, w3, w, vol} spanned by the 2-forms on the
// quaternionic base. 16 vertical subsets times 6 symbols give 96 elements.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "spin7/symexpr.hpp"

namespace spin7 {

enum class Horizontal : std::uint8_t { unit, w1, w2, w3, w, vol };

inline constexpr std::array<Horizontal, 6> kHorizontalSymbols{Horizontal::unit, Horizontal::w1, Horizontal::w2,
                                                              Horizontal::w3,   Horizontal::w,  Horizontal::vol};

constexpr int degree(Horizontal h) {
  switch (h) {
    case Horizontal::unit: return 0;
    case Horizontal::vol: return 4;
    default: return 2;
  }
}

std::string_view horizontal_name(Horizontal h);

/// coefficient * result; coefficient 0 means the product vanishes.
struct HorizontalProduct {
  int coefficient = 0;
  Horizontal result = Horizontal::unit;
  bool operator==(const HorizontalProduct&) const = default;
};

using HorizontalTable = std::array<std::array<HorizontalProduct, 6>, 6>;

/// The multiplication table wedge() uses.
const HorizontalTable& horizontal_table();

/// Recomputes the table by expanding w1, w2, w3, w in the raw exterior
/// algebra on eta4..eta7 and multiplying out every pair.
HorizontalTable horizontal_oracle();

namespace vertical {
inline constexpr std::uint8_t dt = 1u << 0;
inline constexpr std::uint8_t e1 = 1u << 1;
inline constexpr std::uint8_t e2 = 1u << 2;
inline constexpr std::uint8_t e3 = 1u << 3;
}  // namespace vertical

struct BasisElement {
  std::uint8_t vertical = 0;
  Horizontal horizontal = Horizontal::unit;

  int degree() const;
  /// "dt^e1^w1", "e2^e3", "vol", "1".
  std::string label() const;
  auto operator<=>(const BasisElement&) const = default;
};

class Form {
 public:
  using TermMap = std::map<BasisElement, RatFunc>;

  explicit Form(int degree = 0) : degree_(degree) {}
  static Form basis(BasisElement e, const RatFunc& coefficient = RatFunc(1));

  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero when the element is absent.
  RatFunc coefficient(BasisElement e) const;

  /// Adds c*e; e must have the form's degree.
  void add(BasisElement e, const RatFunc& c);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const RatFunc& c, const Form& f);
  Form operator-() const;
  bool operator==(const Form& other) const = default;

  /// Applies f to every coefficient; components that become zero are dropped.
  template <typename Fn>
  Form map_coefficients(Fn&& f) const {
    Form out(degree_);
    for (const auto& [e, c] : terms_) out.add(e, f(c));
    return out;
  }

  /// One "coefficient basis-label" line per component.
  std::string to_string() const;

 private:
  int degree_;
  TermMap terms_;
};

/// Throws DegreeOverflow when deg(a) + deg(b) > 8.
Form wedge(const Form& a, const Form& b);

/// Exterior derivative. Coefficients may only contain the function symbols
/// A1..C (and constants); d of a coefficient X is dX dt by the chain rule.
/// Throws DerivativeSymbolPresent otherwise.
Form ext_d(const Form& f);

std::map<BasisElement, double> eval_numeric(const Form& f, const Point<double>& point);

// Generators.
Form dt_form();
/// eta_i for i in 1..3.
Form eta(int i);
/// w_i for i in 1..3.
Form omega(int i);
Form omega_kahler();
Form horizontal_volume();

}  // namespace spin7
