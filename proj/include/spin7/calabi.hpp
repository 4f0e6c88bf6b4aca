#pragma once

// The explicit one-parameter family of cone metrics with A2 = -A3,
// normalised so the largest root of the polynomial in the dr^2 coefficient
// sits at r = 1:
//
//   A1^2 = F(r) = N(r) / (r^2 (r^4 - alpha^4)),  N(r) = r^8 - 2 alpha^4 (r^4 - 1) - 1,
//   A2 = -r, A3 = r, B^2 = r^2 + alpha^2, C^2 = r^2 - alpha^2,  dt/dr = r / sqrt(F).

#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "spin7/error.hpp"
#include "spin7/flows.hpp"
#include "spin7/structures.hpp"

namespace spin7 {

struct FamilyParams {
  double alpha = 0;
  /// Integration constant fixed by putting the maximal root at r = 1.
  double beta() const { return 2 * alpha * alpha * alpha * alpha - 1; }
};

/// N(r) in the factored form (r - 1)(r + 1)(r^2 + 1)(r^4 + 1 - 2 alpha^4),
/// which stays accurate as r -> 1.
template <std::floating_point T>
T normalized_polynomial(T alpha, T r) {
  const T a4 = alpha * alpha * alpha * alpha;
  return (r - 1) * (r + 1) * (r * r + 1) * (r * r * r * r + 1 - 2 * a4);
}

/// Throws DomainError when r <= alpha.
template <std::floating_point T>
T F_of_r(T alpha, T r) {
  if (!(r > alpha)) throw Error(ErrorKind::DomainError, "F(alpha, r) needs r > alpha");
  const T a4 = alpha * alpha * alpha * alpha;
  return normalized_polynomial(alpha, r) / (r * r * (r * r * r * r - a4));
}

/// dF/dr.
template <std::floating_point T>
T F_prime(T alpha, T r) {
  const T a4 = alpha * alpha * alpha * alpha;
  const T r2 = r * r, r4 = r2 * r2;
  const T n = normalized_polynomial(alpha, r);
  const T dn = 8 * r4 * r2 * r - 8 * a4 * r2 * r;
  const T d = r2 * (r4 - a4);
  const T dd = 6 * r4 * r - 2 * a4 * r;
  return (dn * d - n * dd) / (d * d);
}

struct MetricSample {
  double alpha = 0;
  double r = 0;
  double t_of_r_derivative = 0;
  double A1 = 0;
  double A2 = 0;
  double A3 = 0;
  double B = 0;
  double C = 0;
  /// r = 1: dt/dr diverges (and C vanishes when alpha = 1).
  bool coordinate_singularity = false;

  std::array<double, 5> values() const { return {A1, A2, A3, B, C}; }
  State state(double t) const { return State::from(t, values()); }
};

/// Throws DomainError for r < 1 or r <= alpha.
MetricSample sample(double alpha, double r);

/// Metric functions (A1..C) along the family.
template <std::floating_point T>
std::array<T, 5> family_values(T alpha, T r) {
  const T f = F_of_r(alpha, r);
  return {-std::sqrt(f), -r, r, std::sqrt(r * r + alpha * alpha), std::sqrt(r * r - alpha * alpha)};
}

/// t-derivatives of A1..C along the family, from d/dt = (sqrt(F)/r) d/dr.
template <std::floating_point T>
std::array<T, 5> family_rates(T alpha, T r) {
  const T f = F_of_r(alpha, r);
  const T sf = std::sqrt(f);
  const T b = std::sqrt(r * r + alpha * alpha);
  const T c = std::sqrt(r * r - alpha * alpha);
  return {-F_prime(alpha, r) / (2 * r), -sf / r, sf / r, sf / b, sf / c};
}

/// Closed-form rates minus sys evaluated on the family, in precision T.
template <std::floating_point T>
std::array<T, 5> residuals(T alpha, T r, const OdeSystem& sys) {
  if (!(r > 1)) throw Error(ErrorKind::DomainError, "residuals need r > 1");
  const auto rates = family_rates(alpha, r);
  const auto rhs = CompiledOdeSystem(sys)(family_values(alpha, r));
  std::array<T, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = rates[i] - rhs[i];
  return out;
}

std::array<double, 5> residuals(double alpha, double r);

/// F(rho) = (rho^4 - 2 alpha^4 rho^2 + beta) / (rho (rho^2 - alpha^4)).
RatFunc family_F_of_rho();
/// G(rho) = 1/rho + 1/(rho - alpha^2) + 1/(rho + alpha^2).
RatFunc family_G_of_rho();
/// dF/drho + F G - 4 for the given G.
RatFunc F_identity_residual(const RatFunc& G);
/// True iff dF/drho + F G = 4 identically in rho, alpha, beta.
bool verify_F_identity();

/// dA1/dt and rhs(dA1) on the alpha = 0 family at rational r, both exact.
struct ExactRateCheck {
  Rational closed_form;
  Rational system_rhs;
  bool holds() const { return closed_form == system_rhs; }
};
ExactRateCheck alpha0_rate_check(const Rational& r);

struct SmoothnessLimits {
  double alpha = 0;
  double A1 = 0;
  double abs_dA1 = 0;
  double dB = 0;
  double dC = 0;
  double A2_plus_A3 = 0;
  double dA2_minus_dA3 = 0;
  double A2_at_1 = 0;
  double A3_at_1 = 0;
};

/// Limits as r -> 1+ by Richardson extrapolation in sqrt(r - 1) over
/// r = 1 + 2^-k h, h = min(1e-2, (1 - alpha)/16). Throws DomainError unless 0 <= alpha < 1.
SmoothnessLimits smoothness_limits(double alpha);

struct HolonomyEvidence {
  double alpha = 0;
  std::vector<double> radii;
  std::vector<ClosureReport> per_radius;
  ClosureReport max;
  std::string label;
};

inline constexpr double kClosedThreshold = 1e-10;
inline constexpr double kOpenThreshold = 0.1;
inline constexpr std::array<double, 5> kEvidenceRadii{1.05, 1.5, 2, 5, 20};

/// Closure sweep over kEvidenceRadii: "Sp(2) evidence" when all four forms
/// close, "SU(4) evidence" when only Phi and Omega_1 do, otherwise
/// "inconclusive". Closure evidence in this coframe, not a holonomy proof.
HolonomyEvidence holonomy_evidence(double alpha);

/// t(r) measured from the collapsed orbit r = 1, by quadrature. alpha < 1.
double t_of_r(double alpha, double r);

}  // namespace spin7
