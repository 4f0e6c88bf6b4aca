#include "spin7/calabi.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <limits>

namespace spin7 {

MetricSample sample(double alpha, double r) {
  if (!(alpha >= 0 && alpha <= 1)) throw Error(ErrorKind::DomainError, "alpha must lie in [0, 1]");
  if (!(r >= 1)) throw Error(ErrorKind::DomainError, "the family lives on r >= 1");
  MetricSample s;
  s.alpha = alpha;
  s.r = r;
  s.A2 = -r;
  s.A3 = r;
  s.B = std::sqrt(r * r + alpha * alpha);
  s.C = std::sqrt(std::max(0.0, r * r - alpha * alpha));
  if (r == 1) {
    s.coordinate_singularity = true;
    s.A1 = 0;
    s.t_of_r_derivative = std::numeric_limits<double>::infinity();
    return s;
  }
  const double f = F_of_r(alpha, r);
  s.A1 = -std::sqrt(f);
  s.t_of_r_derivative = r / std::sqrt(f);
  return s;
}

std::array<double, 5> residuals(double alpha, double r) {
  static const OdeSystem reference = OdeSystem::reference();
  return residuals<double>(alpha, r, reference);
}

// ---------------------------------------------------------------- F identity

namespace {

RatFunc v(Symbol s) { return RatFunc::variable(s); }

}  // namespace

RatFunc family_F_of_rho() {
  const RatFunc rho = v(Symbol::rho), alpha = v(Symbol::alpha), beta = v(Symbol::beta);
  const RatFunc a4 = alpha.pow(4);
  return (rho.pow(4) - RatFunc(2) * a4 * rho.pow(2) + beta) / (rho * (rho.pow(2) - a4));
}

RatFunc family_G_of_rho() {
  const RatFunc rho = v(Symbol::rho), a2 = v(Symbol::alpha).pow(2);
  return RatFunc(1) / rho + RatFunc(1) / (rho - a2) + RatFunc(1) / (rho + a2);
}

RatFunc F_identity_residual(const RatFunc& G) {
  const RatFunc F = family_F_of_rho();
  return F.partial(Symbol::rho) + F * G - RatFunc(4);
}

bool verify_F_identity() { return F_identity_residual(family_G_of_rho()).is_zero(); }

ExactRateCheck alpha0_rate_check(const Rational& r) {
  // alpha = 0: F = r^2 - r^-6, so dA1/dt = -F'/(2r) = -1 - 3/r^8.
  const Rational r8 = r * r * r * r * r * r * r * r;
  ExactRateCheck check;
  check.closed_form = -1 - Rational(3) / r8;
  // rhs(dA1) depends on A1 only through A1^2 = F.
  const Rational f = r * r - Rational(1) / (r8 / (r * r));
  const std::array<RewriteRule, 1> a1_squared{RewriteRule{Symbol::A1, 2, Poly(f)}};
  const RatFunc rhs = rewrite(OdeSystem::reference()[0], a1_squared);
  check.system_rhs = rhs.eval(rational_point({{Symbol::A2, -r}, {Symbol::A3, r}, {Symbol::B, r}, {Symbol::C, r}}));
  return check;
}

// ---------------------------------------------------------------- limits

namespace {

constexpr double kRichardsonStep = 1e-2;
constexpr int kRichardsonLevels = 10;

// The expansions in r - 1 converge only up to the nearest pole r = alpha,
// so the base step shrinks with 1 - alpha.
double richardson_base_step(double alpha) { return std::min(kRichardsonStep, (1 - alpha) / 16); }

// Extrapolates f(h) -> h = 0 assuming an expansion in powers of sqrt(h).
template <typename Fn>
double richardson_sqrt(double h0, Fn&& f) {
  std::array<std::array<double, kRichardsonLevels>, kRichardsonLevels> table{};
  for (int k = 0; k < kRichardsonLevels; ++k) {
    table[k][0] = f(h0 * std::ldexp(1.0, -k));
    for (int j = 1; j <= k; ++j) {
      const double factor = std::pow(2.0, 0.5 * j) - 1;
      table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / factor;
    }
  }
  return table[kRichardsonLevels - 1][kRichardsonLevels - 1];
}

}  // namespace

SmoothnessLimits smoothness_limits(double alpha) {
  if (!(alpha >= 0 && alpha < 1)) throw Error(ErrorKind::DomainError, "smoothness limits need 0 <= alpha < 1");
  SmoothnessLimits out;
  out.alpha = alpha;
  const double h0 = richardson_base_step(alpha);
  auto values = [alpha](double h) { return family_values(alpha, 1 + h); };
  auto rates = [alpha](double h) { return family_rates(alpha, 1 + h); };
  out.A1 = richardson_sqrt(h0, [&](double h) { return values(h)[0]; });
  out.abs_dA1 = richardson_sqrt(h0, [&](double h) { return std::abs(rates(h)[0]); });
  out.dB = richardson_sqrt(h0, [&](double h) { return rates(h)[3]; });
  out.dC = richardson_sqrt(h0, [&](double h) { return rates(h)[4]; });
  out.A2_plus_A3 = richardson_sqrt(h0, [&](double h) {
    const auto y = values(h);
    return y[1] + y[2];
  });
  out.dA2_minus_dA3 = richardson_sqrt(h0, [&](double h) {
    const auto d = rates(h);
    return d[1] - d[2];
  });
  const MetricSample at_one = sample(alpha, 1.0);
  out.A2_at_1 = at_one.A2;
  out.A3_at_1 = at_one.A3;
  return out;
}

// ---------------------------------------------------------------- evidence

HolonomyEvidence holonomy_evidence(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) throw Error(ErrorKind::DomainError, "alpha must lie in [0, 1]");
  static const OdeSystem reference = OdeSystem::reference();
  HolonomyEvidence ev;
  ev.alpha = alpha;
  for (double r : kEvidenceRadii) {
    const ClosureReport rep = closure_report(sample(alpha, r).values(), reference);
    ev.radii.push_back(r);
    ev.per_radius.push_back(rep);
    ev.max.phi = std::max(ev.max.phi, rep.phi);
    ev.max.omega1 = std::max(ev.max.omega1, rep.omega1);
    ev.max.omega2 = std::max(ev.max.omega2, rep.omega2);
    ev.max.omega3 = std::max(ev.max.omega3, rep.omega3);
  }
  const bool kaehler = ev.max.phi < kClosedThreshold && ev.max.omega1 < kClosedThreshold;
  if (kaehler && ev.max.omega2 < kClosedThreshold && ev.max.omega3 < kClosedThreshold) {
    ev.label = "Sp(2) evidence";
  } else if (kaehler && ev.max.omega2 >= kOpenThreshold) {
    ev.label = "SU(4) evidence";
  } else {
    ev.label = "inconclusive";
  }
  return ev;
}

double t_of_r(double alpha, double r) {
  if (!(alpha >= 0 && alpha < 1)) throw Error(ErrorKind::DomainError, "t(r) needs 0 <= alpha < 1");
  if (!(r >= 1)) throw Error(ErrorKind::DomainError, "t(r) needs r >= 1");
  if (r == 1) return 0;
  const double a4 = alpha * alpha * alpha * alpha;
  // r = 1 + u^2 removes the 1/sqrt(r - 1) singularity: dt = 2 r u / sqrt(F) du
  // and F / u^2 = (r + 1)(r^2 + 1)(r^4 + 1 - 2 alpha^4) / (r^2 (r^4 - alpha^4)).
  auto integrand = [a4](double u) {
    const double x = 1 + u * u;
    const double x2 = x * x, x4 = x2 * x2;
    const double f_over_u2 = (x + 1) * (x2 + 1) * (x4 + 1 - 2 * a4) / (x2 * (x4 - a4));
    return 2 * x / std::sqrt(f_over_u2);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, std::sqrt(r - 1), 15, 1e-14);
}

}  // namespace spin7
