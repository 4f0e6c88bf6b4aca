#pragma once

// The Cayley 4-form of the cone metric, the Kaehler triple, and the ODE
// system their closure imposes on the metric functions A1, A2, A3, B, C.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "spin7/coframe.hpp"
#include "spin7/symexpr.hpp"

namespace spin7 {

/// Right-hand sides of A1', A2', A3', B', C' (in that order) as rational
/// functions of A1..C.
struct OdeSystem {
  std::array<RatFunc, 5> rhs;

  const RatFunc& operator[](std::size_t i) const { return rhs[i]; }
  /// {dA1 -> rhs[0], ..., dC -> rhs[4]}.
  std::map<Symbol, RatFunc> substitution() const;
  bool operator==(const OdeSystem& other) const = default;

  /// Exact specialisation B = C (rewrite C -> B in every right-hand side).
  OdeSystem with_bc_equal() const;

  /// The five-equation system in the displayed closed form.
  static OdeSystem reference();
  /// The four-equation B = C system as displayed; C' is set equal to B'.
  static OdeSystem reference_bc_equal();
};

/// Double-precision evaluator for an OdeSystem.
class CompiledOdeSystem {
 public:
  explicit CompiledOdeSystem(const OdeSystem& sys);

  template <typename T>
  std::array<T, 5> operator()(const std::array<T, 5>& values) const {
    Point<T> p{};
    for (std::size_t i = 0; i < 5; ++i) p[i] = values[i];
    std::array<T, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) out[i] = rhs_[i].eval(p);
    return out;
  }

 private:
  std::array<CompiledRatFunc, 5> rhs_;
};

Form build_phi();
/// k in 1..3.
Form build_omega_bar(int k);

/// d(Phi) with derivative symbols dA1..dC left free.
const Form& phi_differential();

/// Solves d(Phi) = 0 for the five derivatives by fraction-free elimination
/// over the rational-function field. Throws SingularSystem when the
/// coefficient matrix is rank-deficient or the equations are inconsistent.
OdeSystem derive_ode();

/// True iff substituting sys for the derivative symbols makes d(Phi) vanish
/// identically.
bool verify_lemma1(const OdeSystem& sys);

/// The substitution A3 -> -A2, B^2 -> A2^2 + alpha^2, C^2 -> A2^2 - alpha^2.
std::vector<RewriteRule> ansatz_rules();

struct AnsatzReport {
  /// A2' + A3' under A3 -> -A2.
  RatFunc sum_a2_a3;
  /// (B^2 - C^2)' = 2B B' - 2C C' before any substitution.
  RatFunc b2_minus_c2_rate;
  /// (B^2 - C^2)' / (A2 + A3), exact.
  RatFunc b2_minus_c2_cofactor;
  /// A1' under the full ansatz.
  RatFunc reduced_a1;
  /// (A2^2)' = 2 A2 A2' under the full ansatz.
  RatFunc reduced_a2_squared;
};

/// Checks the ansatz reduction exactly; throws ReductionFailure carrying
/// the offending residual if any of the identities fails.
AnsatzReport reduce_ansatz(const OdeSystem& sys);

enum class ClosedForm { phi, omega1, omega2, omega3 };

struct ClosureReport {
  double phi = 0;
  double omega1 = 0;
  double omega2 = 0;
  double omega3 = 0;
};

/// Numeric components of d(form) at the given A1..C values, with sys
/// supplying the derivatives.
std::map<BasisElement, double> closure_components(ClosedForm which, const std::array<double, 5>& values,
                                                  const OdeSystem& sys);

/// Max absolute component of d(Phi), d(Omega_1..3) at the given values.
ClosureReport closure_report(const std::array<double, 5>& values, const OdeSystem& sys);
/// Same, evaluated in extended precision. Far out along the family the
/// components cancel terms of size B^4, which costs several digits in double.
ClosureReport closure_report(const std::array<long double, 5>& values, const OdeSystem& sys);

}  // namespace spin7
