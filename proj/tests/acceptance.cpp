// Acceptance checks. Each check prints one PASS/FAIL line with the measured
// quantity next to its threshold. Usage: acceptance [check-name ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "spin7/calabi.hpp"
#include "spin7/coframe.hpp"
#include "spin7/flows.hpp"
#include "spin7/structures.hpp"

using namespace spin7;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<double> kAlphaGrid{0, 0.3, 0.6, 0.9, 0.99, 1};
const std::vector<double> kOpenAlphaGrid{0, 0.3, 0.6, 0.9, 0.99};

Outcome derivation() {
  const auto start = std::chrono::steady_clock::now();
  const OdeSystem sys = derive_ode();
  const OdeSystem ref = OdeSystem::reference();
  int matching = 0;
  for (std::size_t i = 0; i < 5; ++i) matching += sys[i] == ref[i];
  const bool closed = verify_lemma1(sys);
  const double elapsed = seconds_since(start);
  return {matching == 5 && closed && elapsed < 10,
          fmt("%d/5 right-hand sides equal, d(Phi) vanishes: %s, %.2f s (limit 10 s)", matching, closed ? "yes" : "no",
              elapsed)};
}

Outcome structure_equations() {
  int vanishing = 0;
  for (int i = 1; i <= 3; ++i) {
    vanishing += ext_d(ext_d(eta(i))).is_zero();
    vanishing += ext_d(ext_d(omega(i))).is_zero();
  }
  const HorizontalTable table = horizontal_table(), oracle = horizontal_oracle();
  int agreeing = 0;
  for (std::size_t i = 1; i < 6; ++i)
    for (std::size_t j = 1; j < 6; ++j) agreeing += table[i][j] == oracle[i][j];
  return {vanishing == 6 && agreeing == 25,
          fmt("d^2 = 0 on %d/6 generators, %d/25 horizontal products match the oracle", vanishing, agreeing)};
}

Outcome bc_equal_system() {
  const OdeSystem bc = derive_ode().with_bc_equal();
  const OdeSystem ref = OdeSystem::reference_bc_equal();
  int matching = 0;
  for (std::size_t i = 0; i < 4; ++i) matching += bc[i] == ref[i];
  return {matching == 4, fmt("%d/4 equations of the B = C system equal", matching)};
}

Outcome ansatz_reduction() {
  const RatFunc A1 = RatFunc::variable(Symbol::A1), A2 = RatFunc::variable(Symbol::A2),
                B = RatFunc::variable(Symbol::B), C = RatFunc::variable(Symbol::C),
                alpha = RatFunc::variable(Symbol::alpha);
  try {
    const AnsatzReport r = reduce_ansatz(OdeSystem::reference());
    const bool sum = r.sum_a2_a3 == RatFunc(-2) * (B.pow(2) + C.pow(2) - RatFunc(2) * A2.pow(2)) / (B * C);
    const bool rate = rewrite(r.b2_minus_c2_rate, ansatz_rules()).is_zero();
    const bool a1 = r.reduced_a1 ==
                    RatFunc(-4) + A1.pow(2) / A2.pow(2) + RatFunc(2) * A1.pow(2) * A2.pow(2) / (A2.pow(4) - alpha.pow(4));
    return {sum && rate && a1, fmt("A2'+A3' form: %s, (B^2-C^2)' = 0: %s, reduced A1': %s", sum ? "exact" : "differs",
                                   rate ? "exact" : "differs", a1 ? "exact" : "differs")};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Outcome f_identity() {
  const bool ok = verify_F_identity();
  return {ok, ok ? "dF/drho + F G - 4 = 0 identically" : "residual " + F_identity_residual(family_G_of_rho()).to_string()};
}

Outcome family_residuals() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0;
  const double lo = std::log(1.001), hi = std::log(50.0);
  for (double alpha : kOpenAlphaGrid)
    for (int i = 0; i < 200; ++i) {
      const double r = i == 199 ? 50.0 : std::exp(lo + (hi - lo) * i / 199);
      for (double x : residuals(alpha, i == 0 ? 1.001 : r)) worst = std::max(worst, std::abs(x));
    }
  int exact = 0;
  for (int r : {2, 3, 5}) exact += alpha0_rate_check(Rational(r)).holds();
  const double elapsed = seconds_since(start);
  return {worst < 1e-10 && exact == 3 && elapsed < 30,
          fmt("max |residual| %.3g (limit 1e-10), exact alpha=0 identity at %d/3 radii, %.2f s", worst, exact, elapsed)};
}

Outcome smoothness() {
  double worst_a1 = 0, worst_b = 0, worst_c = 0;
  bool ends = true;
  for (double alpha : kOpenAlphaGrid) {
    const SmoothnessLimits lim = smoothness_limits(alpha);
    worst_a1 = std::max(worst_a1, std::abs(lim.abs_dA1 - 4));
    worst_b = std::max(worst_b, std::abs(lim.dB));
    worst_c = std::max(worst_c, std::abs(lim.dC));
    ends = ends && lim.A2_at_1 == -1 && lim.A3_at_1 == 1;
  }
  return {worst_a1 < 1e-6 && worst_b < 1e-8 && worst_c < 1e-8 && ends,
          fmt("max ||A1'|-4| %.2g (1e-6), max |B'| %.2g (1e-8), max |C'| %.2g (1e-8), A2(1) = -1 and A3(1) = 1: %s",
              worst_a1, worst_b, worst_c, ends ? "yes" : "no")};
}

Outcome closure_sweep() {
  const OdeSystem sys = OdeSystem::reference();
  double phi = 0, omega1 = 0;
  for (double alpha : kAlphaGrid)
    for (int i = 0; i < 50; ++i) {
      const long double r = 1.001L * std::pow(50 / 1.001L, i / 49.0L);
      const ClosureReport rep = closure_report(family_values<long double>(alpha, r), sys);
      phi = std::max(phi, rep.phi);
      omega1 = std::max(omega1, rep.omega1);
    }
  double hk = 0;
  for (int i = 0; i < 50; ++i) {
    const ClosureReport rep = closure_report(family_values<long double>(1.0L, 1.001L * std::pow(50 / 1.001L, i / 49.0L)), sys);
    hk = std::max({hk, rep.omega2, rep.omega3});
  }
  const auto comps = closure_components(ClosedForm::omega2, family_values(0.5, 1.05), sys);
  const double open = std::abs(comps.at(BasisElement{vertical::dt, Horizontal::w2}));
  return {phi < 1e-10 && omega1 < 1e-10 && hk < 1e-10 && open >= 0.3,
          fmt("max d(Phi) %.2g, max d(Omega1) %.2g, alpha=1 max d(Omega2,3) %.2g (all < 1e-10); "
              "alpha=0.5 r=1.05 (dt,w2) component %.4f (>= 0.3)",
              phi, omega1, hk, open)};
}

double relative_error(const State& s, const std::array<double, 5>& expected) {
  const auto v = s.values();
  double worst = 0;
  for (std::size_t i = 0; i < 5; ++i) worst = std::max(worst, std::abs(v[i] - expected[i]) / std::abs(expected[i]));
  return worst;
}

Outcome trajectory_matching() {
  const double alpha = 0.3;
  IntegrateOptions o;
  o.t_end = 1e3;
  o.rel_tol = 1e-10;
  o.event = [](const State& s) { return std::abs(s.A2) - 5; };
  const Trajectory tr = integrate(sample(alpha, 1.1).state(t_of_r(alpha, 1.1)), OdeSystem::reference(), o);
  const double err = relative_error(tr.back(), sample(alpha, -tr.back().A2).values());
  const DriftReport d = monitor(tr);
  return {tr.stop == StopReason::event && err < 1e-6 && d.b2_minus_c2 < 1e-8 && d.ansatz_constraint < 1e-8,
          fmt("relative error at |A2| = 5: %.2g (1e-6), drift B^2-C^2 %.2g, B^2+C^2-2A2^2 %.2g (1e-8)", err,
              d.b2_minus_c2, d.ansatz_constraint)};
}

Outcome seed_consistency() {
  const double alpha = 0.3;
  IntegrateOptions o;
  o.t_end = 1e3;
  o.event = [](const State& s) { return s.A3 - 2; };
  const State from_seed = integrate(seed(SeedSpec::symmetric(alpha, 1e-4)), OdeSystem::reference(), o).back();
  const State from_family =
      integrate(sample(alpha, 1.01).state(t_of_r(alpha, 1.01)), OdeSystem::reference(), o).back();
  const double err = relative_error(from_seed, from_family.values());
  const double dt = std::abs(from_seed.t - from_family.t) / from_family.t;
  return {err < 1e-5 && dt < 1e-5, fmt("relative state difference at r = 2: %.2g, in t: %.2g (1e-5)", err, dt)};
}

Outcome alc_exploration() {
  const OdeSystem sys = OdeSystem::reference_bc_equal();
  try {
    const Trajectory first = integrate(seed(SeedSpec::bc_equal(0.5, 1)), sys, 50.0);
    const Trajectory second = integrate(first.back(), sys, 100.0);
    double max_a1 = 0;
    for (const auto* tr : {&first, &second})
      for (const State& s : tr->samples) max_a1 = std::max(max_a1, std::abs(s.A1));
    const State& mid = first.back();
    const State& end = second.back();
    const double growth = std::min({std::abs(end.A2), end.A3, end.B});
    const double change = std::abs(end.A1 - mid.A1) / std::abs(end.A1);
    return {max_a1 < 10 && growth > 20 && change < 0.05,
            fmt("max |A1| %.4g (< 10), min(|A2|, A3, B) at t=100 %.4g (> 20), A1 change over [50,100] %.3g (< 0.05); "
                "A3 change %.2g",
                max_a1, growth, change, std::abs(end.A3 - mid.A3) / end.A3)};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kChecks{
    {"derivation", derivation},
    {"structure-equations", structure_equations},
    {"bc-equal-system", bc_equal_system},
    {"ansatz-reduction", ansatz_reduction},
    {"f-identity", f_identity},
    {"family-residuals", family_residuals},
    {"smoothness-limits", smoothness},
    {"closure-sweep", closure_sweep},
    {"trajectory-matching", trajectory_matching},
    {"seed-consistency", seed_consistency},
    {"alc-exploration", alc_exploration},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0, ran = 0;
  for (const auto& [name, check] : kChecks) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %-20s %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failures += !o.passed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such check\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
