#pragma once

// Volterra equations u(t) = f(u(t)) + int_0^t g(s, u(s)) ds and Hammerstein
// equations u(t) = f(t, u(t)) + Phi(t, int_0^t k(t, s) u(s) ds) on a uniform
// grid, solved with the sum-of-operators engine.

#include <functional>
#include <span>
#include <vector>

#include "fpforge/certificate.hpp"
#include "fpforge/engine.hpp"
#include "fpforge/geometry.hpp"
#include "fpforge/space.hpp"

namespace fpforge {

using VecMap = std::function<void(std::span<const double> x, std::span<double> out)>;
using TimeVecMap = std::function<void(double t, std::span<const double> x, std::span<double> out)>;
using ScalarFn = std::function<double(double)>;

struct VolterraProblem {
  VecMap f;           ///< lam-Lipschitz, lam < 1
  double lam = 0.0;
  TimeVecMap g;
  ScalarFn alpha;     ///< ||g(s, u)|| <= alpha(s) phi(||u||)
  ScalarFn phi;       ///< nondecreasing, positive
  Grid grid{1.0, 1};
  std::size_t dim = 1;
  double vector_p = 2.0;
};

/// A-priori tube radius b(t) = J^{-1}(int_0^t alpha) with
/// J(z) = int_{||f(0)||}^z dx / phi(x). Throws BlowupBeforeT when the
/// growth bound does not let b reach the end of the grid.
[[nodiscard]] GridFunction bound_b(const VolterraProblem& prob);

/// A(u)(t) = f(0) + int_0^t g(s, u(s)) ds.
[[nodiscard]] GridFunction volterra_A(const VolterraProblem& prob, const GridFunction& u);
/// B(u)(t) = f(u(t)) - f(0).
[[nodiscard]] GridFunction volterra_B(const VolterraProblem& prob, const GridFunction& u);

struct VolterraResult {
  IterationReport report;
  GridFunction bound;
  /// max_i ||u(t_i)|| / b(t_i).
  double tightness = 0.0;
};

[[nodiscard]] VolterraResult solve_volterra(const VolterraProblem& prob, const SolveOptions& opts);

/// Sup and difference-quotient bounds of a computed solution against a
/// Lipschitz-ball radius (for instance the C6 radius).
struct LipschitzCheck {
  double sup_norm;
  double slope_norm;
  double w1inf_norm;
  bool within;  ///< both sup_norm and slope_norm are <= radius
};
[[nodiscard]] LipschitzCheck lipschitz_check(const GridFunction& u, double radius, double vector_p = 2.0);

struct HammersteinProblem {
  TimeVecMap f;       ///< ||f(t, x) - f(t, 0)|| <= f_lip ||x||
  double f_lip = 0.0;
  std::function<double(double t, double s)> k;
  TimeVecMap Phi;
  ScalarFn G;         ///< ||Phi(t, v)|| <= G(t) psi(||v||)
  ScalarFn psi;
  double p = 2.0;
  Grid grid{1.0, 1};
  std::size_t dim = 1;
  double vector_p = 2.0;

  [[nodiscard]] SpaceSpec space() const { return SpaceSpec::lp(p, vector_p); }
};

/// K(u)(t_i) = trapezoid of k(t_i, s) u(s) over [0, t_i].
[[nodiscard]] GridFunction kernel_apply(const HammersteinProblem& prob, const GridFunction& u);

/// Discrete C = max_i ||k(t_i, .)||_{L^q(0, t_i)} with q = p / (p - 1).
[[nodiscard]] double kernel_bound(const HammersteinProblem& prob);

/// Smallest R with ||G||_p psi(C R) / (R - ||f(., 0)||_p) <= 1.
[[nodiscard]] Certificate ball_certificate_a3(const HammersteinProblem& prob);

[[nodiscard]] GridFunction hammerstein_A(const HammersteinProblem& prob, const GridFunction& u);
[[nodiscard]] GridFunction hammerstein_B(const HammersteinProblem& prob, const GridFunction& u);

struct HammersteinOptions {
  SolveOptions solve;
  bool override_certificate = false;
};

struct HammersteinResult {
  IterationReport report;
  Certificate ball;
  double eps0 = 0.0;
  std::size_t a5_pass = 0;
  std::size_t a5_vacuous = 0;
  std::size_t a5_fail = 0;
  /// Non-vacuous A5 passes whose strengthened-triangle ball bound exceeded R.
  std::size_t lemma_ball_violations = 0;
  /// 1 when the final ||A(u) + B(u)||_p <= R check fails under a passing
  /// ball certificate.
  std::size_t hard_a5_blocks = 0;
};

[[nodiscard]] HammersteinResult solve_hammerstein(const HammersteinProblem& prob, const ConvexityProfile& profile,
                                                  const HammersteinOptions& opts);

}  // namespace fpforge
