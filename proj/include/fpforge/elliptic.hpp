#pragma once

// 1D semilinear Dirichlet problem
//   -u'' + lambda u = mu |u|^{p-2} u + a |u|^{q-2} u + h(x)  on (0, 1),
// posed as the fixed-point problem w = N(L^{-1} w) - lambda L^{-1} w for
// w = L u, with L the standard second-difference operator.
//
// Vectors hold the n interior values; norms are h-weighted,
// ||v||_r = (h sum |v_i|^r)^{1/r}, matching the trapezoid L^r norm of the
// function that vanishes at both ends.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fpforge/certificate.hpp"
#include "fpforge/engine.hpp"

namespace fpforge {

struct EllipticProblem {
  std::size_t n_interior = 100;
  double lambda = 0.0;
  double mu = 0.0;
  double p_exp = 4.0;
  double q_exp = 1.5;
  double a_coef = 0.0;
  std::vector<double> h_data;

  [[nodiscard]] double spacing() const { return 1.0 / static_cast<double>(n_interior + 1); }
  /// Interior node x_i = (i + 1) h.
  [[nodiscard]] double node(std::size_t i) const { return static_cast<double>(i + 1) * spacing(); }
  /// Smallest eigenvalue (2 / h^2)(1 - cos(pi h)) of L.
  [[nodiscard]] double lambda1() const;
  void validate() const;
};

[[nodiscard]] double weighted_norm(std::span<const double> v, double r, double h);

[[nodiscard]] std::vector<double> apply_laplacian(const EllipticProblem& prob, std::span<const double> u);
/// Direct tridiagonal solve of L u = w with zero boundary values.
[[nodiscard]] std::vector<double> laplacian_inverse(const EllipticProblem& prob, std::span<const double> w);

/// mu |v|^{p-2} v + a |v|^{q-2} v + h, pointwise.
[[nodiscard]] std::vector<double> nemytskii(const EllipticProblem& prob, std::span<const double> v);

struct GammaEstimate {
  double gamma;            ///< best observed ||L^{-1} v||_{2p} / ||v||_2
  double certified;        ///< gamma * safety
  double safety = 1.05;
  std::vector<double> witness;
};

/// Lower estimate of the smallest gamma with ||w||_{2p} <= gamma ||L w||_2:
/// random Gaussian search followed by nonlinear power iteration on the best
/// candidate. Deterministic for a fixed seed.
[[nodiscard]] GammaEstimate gamma_estimate(const EllipticProblem& prob, double p, std::uint64_t seed,
                                           std::size_t samples = 10000);

/// mu* = (R - a gamma^{q-1} R^{q-1} - ||h||_2) / (gamma^{p-1} R^{p-1}).
[[nodiscard]] Certificate mu_star(const EllipticProblem& prob, double gamma, double R);

struct EllipticOptions {
  SolveOptions solve;
  /// Ball radius for the mu* certificate; required when mu > 0.
  std::optional<double> radius;
  std::optional<double> gamma;  ///< certified gamma; estimated when absent
  std::uint64_t seed = 42;
  std::size_t gamma_samples = 10000;
  bool override_certificate = false;
};

struct EllipticResult {
  IterationReport report;          ///< fixed-point variable w = L u
  std::vector<double> solution;    ///< u = L^{-1} w, interior values
  std::optional<Certificate> certificate;
  std::optional<double> gamma;
};

[[nodiscard]] EllipticResult solve_elliptic(const EllipticProblem& prob, const EllipticOptions& opts);

/// Interior vector <-> grid function on [0, 1] with zero end values.
[[nodiscard]] GridFunction embed(const EllipticProblem& prob, std::span<const double> v);
[[nodiscard]] std::vector<double> interior(const GridFunction& u);

}  // namespace fpforge
