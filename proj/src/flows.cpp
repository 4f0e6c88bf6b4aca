#include "spin7/flows.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "spin7/format.hpp"

namespace spin7 {

namespace {

constexpr double kSingularThreshold = 1e-14;

using Vec = std::array<double, 5>;

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [c, k] : terms)
    if (c != 0)
      for (std::size_t i = 0; i < 5; ++i) out[i] += h * c * (*k)[i];
  return out;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Dense {
  Vec r1, r2, r3, r4, r5;
  double t0, h;

  Vec at(double theta) const {
    const double one_minus = 1 - theta;
    Vec y{};
    for (std::size_t i = 0; i < 5; ++i)
      y[i] = r1[i] + theta * (r2[i] + one_minus * (r3[i] + theta * (r4[i] + one_minus * r5[i])));
    return y;
  }
};

class Stepper {
 public:
  Stepper(const OdeSystem& sys, double rel_tol) : f_(sys), rtol_(rel_tol), atol_(1e-3 * rel_tol) {}

  Vec rhs(const Vec& y) const {
    for (double v : y)
      if (std::abs(v) < kSingularThreshold)
        throw Error(ErrorKind::SingularDenominator, "a metric coefficient reached zero");
    return f_(y);
  }

  double norm(const Vec& e, const Vec& y0, const Vec& y1) const {
    double sum = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      const double sc = atol_ + rtol_ * std::max(std::abs(y0[i]), std::abs(y1[i]));
      sum += (e[i] / sc) * (e[i] / sc);
    }
    return std::sqrt(sum / 5);
  }

  // Starting step heuristic of Hairer, Norsett & Wanner.
  double initial_step(const Vec& y, const Vec& k1, double span) const {
    const double d0 = norm(y, y, y);
    const double d1 = norm(k1, y, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const Vec k2 = rhs(axpy(y, h0, {{1.0, &k1}}));
    Vec diff{};
    for (std::size_t i = 0; i < 5; ++i) diff[i] = k2[i] - k1[i];
    const double d2 = norm(diff, y, y) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5);
    return std::min({100 * h0, h1, span});
  }

  double rtol() const { return rtol_; }

 private:
  CompiledOdeSystem f_;
  double rtol_;
  double atol_;
};

void check_signs(const State& s, const Trajectory& so_far) {
  if (!satisfies_sign_convention(s))
    throw IntegrationError(ErrorKind::SignViolation,
                           "sign convention broken at t = " + format_double(s.t), so_far);
}

}  // namespace

bool satisfies_sign_convention(const State& s) { return s.A1 <= 0 && s.A2 <= 0 && s.A3 >= 0 && s.B > 0 && s.C > 0; }

std::array<double, 5> rhs_eval(const State& s, const OdeSystem& sys) {
  for (double v : s.values())
    if (std::abs(v) < kSingularThreshold)
      throw Error(ErrorKind::SingularDenominator, "a metric coefficient is within 1e-14 of zero");
  return CompiledOdeSystem(sys)(s.values());
}

double bc_equal_initial_slope(double a, double b) { return a * a / (b * b) - 1; }

State seed(const SeedSpec& spec) {
  const double eps = spec.epsilon;
  if (!(eps > 0 && eps <= 1e-2)) throw Error(ErrorKind::InvalidSpec, "epsilon must lie in (0, 1e-2]");
  switch (spec.kind) {
    case SeedSpec::Kind::symmetric: {
      const double alpha = spec.alpha;
      if (!(alpha >= 0 && alpha < 1)) throw Error(ErrorKind::InvalidSpec, "symmetric seed needs 0 <= alpha < 1");
      // rho = A2^2 = 1 + 4 t^2 + O(t^4) along the normalised family.
      const double rho = 1 + 4 * eps * eps;
      const double a2 = std::sqrt(rho);
      return {eps, -4 * eps, -a2, a2, std::sqrt(rho + alpha * alpha), std::sqrt(rho - alpha * alpha)};
    }
    case SeedSpec::Kind::bc_equal: {
      const double a = spec.a, b = spec.b;
      if (!(a > 0 && a < b)) throw Error(ErrorKind::InvalidSpec, "bc_equal seed needs 0 < a < b");
      const double k = bc_equal_initial_slope(a, b);
      const double b2 = b * b;
      const double q = (3 * a * a * a * a - 2 * a * a * b2 + 3 * b2 * b2) / (2 * a * b2 * b2);
      const double bc = b + (3 * b2 - a * a) / (b2 * b) * eps * eps;
      return {eps, -4 * eps, -a + k * eps - q * eps * eps, a + k * eps + q * eps * eps, bc, bc};
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown seed kind");
}

Trajectory integrate(const State& initial, const OdeSystem& sys, double t_end, double rel_tol) {
  IntegrateOptions options;
  options.t_end = t_end;
  options.rel_tol = rel_tol;
  return integrate(initial, sys, options);
}

Trajectory integrate(const State& initial, const OdeSystem& sys, const IntegrateOptions& options) {
  if (!(options.rel_tol >= 1e-13 && options.rel_tol <= 1e-6))
    throw Error(ErrorKind::InvalidSpec, "rel_tol must lie in [1e-13, 1e-6]");
  if (!(options.t_end >= initial.t)) throw Error(ErrorKind::InvalidSpec, "t_end precedes the initial time");

  Trajectory traj;
  traj.samples.push_back(initial);
  check_signs(initial, Trajectory{});
  if (options.t_end == initial.t) return traj;

  const Stepper stepper(sys, options.rel_tol);
  double t = initial.t;
  Vec y = initial.values();
  double event_prev = options.event ? options.event(initial) : 0;

  auto fail = [&](const Error& e) -> IntegrationError { return IntegrationError(e.kind(), e.detail(), traj); };

  try {
    Vec k1 = stepper.rhs(y);
    double h = stepper.initial_step(y, k1, options.t_end - t);
    bool last_rejected = false;

    for (std::size_t step = 0; step < options.max_steps; ++step) {
      const double remaining = options.t_end - t;
      bool final_step = false;
      if (h >= remaining) {
        h = remaining;
        final_step = true;
      }
      if (h < 1e-14 * std::abs(t))
        throw IntegrationError(ErrorKind::StepUnderflow, "step size underflow at t = " + format_double(t), traj);

      const Vec k2 = stepper.rhs(axpy(y, h, {{a21, &k1}}));
      const Vec k3 = stepper.rhs(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
      const Vec k4 = stepper.rhs(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const Vec k5 = stepper.rhs(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const Vec k6 = stepper.rhs(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      const Vec y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
      const Vec k7 = stepper.rhs(y1);

      Vec err{};
      for (std::size_t i = 0; i < 5; ++i)
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double err_norm = stepper.norm(err, y, y1);

      if (!(err_norm <= 1.0)) {
        ++traj.stats.rejected;
        const double shrink = std::isfinite(err_norm) ? std::max(0.2, 0.9 * std::pow(err_norm, -0.2)) : 0.2;
        h *= shrink;
        last_rejected = true;
        continue;
      }

      ++traj.stats.accepted;
      traj.stats.max_error_estimate = std::max(traj.stats.max_error_estimate, err_norm * stepper.rtol());
      const double t1 = final_step ? options.t_end : t + h;
      State next = State::from(t1, y1);

      if (options.event) {
        const double g1 = options.event(next);
        if (g1 == 0 || (g1 > 0) != (event_prev > 0)) {
          Dense dense{y, {}, {}, {}, {}, t, h};
          for (std::size_t i = 0; i < 5; ++i) {
            dense.r2[i] = y1[i] - y[i];
            dense.r3[i] = h * k1[i] - dense.r2[i];
            dense.r4[i] = dense.r2[i] - h * k7[i] - dense.r3[i];
            dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
          }
          double lo = 0, hi = 1;
          const bool prev_positive = event_prev > 0;
          for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = options.event(State::from(t + mid * h, dense.at(mid)));
            if (g != 0 && (g > 0) == prev_positive) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          next = State::from(t + hi * h, dense.at(hi));
          check_signs(next, traj);
          traj.samples.push_back(next);
          traj.stop = StopReason::event;
          return traj;
        }
        event_prev = g1;
      }

      check_signs(next, traj);
      traj.samples.push_back(next);
      if (final_step) return traj;

      t = t1;
      y = y1;
      k1 = k7;
      double grow = err_norm == 0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err_norm, -0.2)));
      if (last_rejected) grow = std::min(grow, 1.0);
      last_rejected = false;
      h *= grow;
    }
  } catch (const IntegrationError&) {
    throw;
  } catch (const Error& e) {
    throw fail(e);
  }
  throw IntegrationError(ErrorKind::StepUnderflow, "step budget exhausted before t_end", traj);
}

DriftReport monitor(const Trajectory& traj) {
  DriftReport report;
  if (traj.samples.empty()) return report;
  const State& s0 = traj.front();
  const double split0 = s0.B * s0.B - s0.C * s0.C;
  const double sum0 = s0.B * s0.B + s0.C * s0.C;
  report.ansatz_tracked = std::abs(sum0 - 2 * s0.A2 * s0.A2) <= 1e-12 * std::max(1.0, sum0);
  for (const State& s : traj.samples) {
    report.b2_minus_c2 = std::max(report.b2_minus_c2, std::abs((s.B * s.B - s.C * s.C) - split0));
    if (report.ansatz_tracked)
      report.ansatz_constraint =
          std::max(report.ansatz_constraint, std::abs(s.B * s.B + s.C * s.C - 2 * s.A2 * s.A2));
  }
  return report;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,A1,A2,A3,B,C\n";
  for (const State& s : traj.samples)
    out << format_double(s.t) << ',' << format_double(s.A1) << ',' << format_double(s.A2) << ','
        << format_double(s.A3) << ',' << format_double(s.B) << ',' << format_double(s.C) << '\n';
}

}  // namespace spin7
