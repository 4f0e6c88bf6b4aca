#pragma once

// Numerical integration of the cone ODE systems from data near the
// collapsing orbit t = 0.

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "spin7/error.hpp"
#include "spin7/structures.hpp"

namespace spin7 {

struct State {
  double t = 0;
  double A1 = 0;
  double A2 = 0;
  double A3 = 0;
  double B = 0;
  double C = 0;

  std::array<double, 5> values() const { return {A1, A2, A3, B, C}; }
  static State from(double t, const std::array<double, 5>& v) { return {t, v[0], v[1], v[2], v[3], v[4]}; }
};

/// A1 <= 0, A2 <= 0, A3 >= 0, B > 0, C > 0.
bool satisfies_sign_convention(const State& s);

/// Throws SingularDenominator if any of A1..C is within 1e-14 of zero.
std::array<double, 5> rhs_eval(const State& s, const OdeSystem& sys);

struct SeedSpec {
  enum class Kind { symmetric, bc_equal };

  Kind kind = Kind::symmetric;
  double alpha = 0;  // symmetric
  double a = 0;      // bc_equal: -A2(0) = A3(0)
  double b = 0;      // bc_equal: B(0) = C(0)
  double epsilon = 1e-4;

  static SeedSpec symmetric(double alpha, double epsilon = 1e-4) { return {Kind::symmetric, alpha, 0, 0, epsilon}; }
  static SeedSpec bc_equal(double a, double b, double epsilon = 1e-4) { return {Kind::bc_equal, 0, a, b, epsilon}; }
};

/// Common value of A2'(0) = A3'(0) for the B = C system started from
/// (0, -a, a, b, b): the fixed point of the limiting right-hand side.
double bc_equal_initial_slope(double a, double b);

/// Truncated series of the smooth solution at t = epsilon, error O(epsilon^3).
/// Throws InvalidSpec when the parameters leave their admissible ranges.
State seed(const SeedSpec& spec);

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_error_estimate = 0;
};

enum class StopReason { reached_end, event };

struct Trajectory {
  std::vector<State> samples;
  StepStats stats;
  StopReason stop = StopReason::reached_end;

  const State& front() const { return samples.front(); }
  const State& back() const { return samples.back(); }
};

struct IntegrateOptions {
  double t_end = 0;
  double rel_tol = 1e-10;
  /// Integration stops at the first zero crossing of this function, located
  /// on the continuous extension.
  std::function<double(const State&)> event;
  std::size_t max_steps = 10'000'000;
};

/// Raised when integration stops early; carries the samples accepted so far.
class IntegrationError : public Error {
 public:
  IntegrationError(ErrorKind kind, const std::string& message, Trajectory partial)
      : Error(kind, message), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Adaptive Dormand-Prince 5(4). rel_tol must lie in [1e-13, 1e-6].
Trajectory integrate(const State& initial, const OdeSystem& sys, const IntegrateOptions& options);
Trajectory integrate(const State& initial, const OdeSystem& sys, double t_end, double rel_tol = 1e-10);

struct DriftReport {
  double b2_minus_c2 = 0;
  double ansatz_constraint = 0;
  /// Whether the initial state lies on B^2 + C^2 = 2 A2^2.
  bool ansatz_tracked = false;
};

DriftReport monitor(const Trajectory& traj);

/// Header `t,A1,A2,A3,B,C`, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace spin7
