#pragma once

// A-priori radius certificates for invariant balls, plus the sampling check
// for expanding maps.

#include <cstdint>
#include <vector>

#include "fpforge/certificate.hpp"
#include "fpforge/engine.hpp"

namespace fpforge {

struct MuStarInput {
  double p;      ///< power of the mu term, > 1
  double q;      ///< sublinear power, in (0, 1)
  double a;      ///< coefficient of R^q
  double b;      ///< constant term
  double lam_b;  ///< lambda * ||B||_Lip, in [0, 1)
};

struct RadiusBracket {
  double lo = 1e-6;
  double hi = 1e6;
};

/// Maximizes mu(R) = (R (1 - lam_b) - a R^q - b) / R^p over R in the bracket.
/// PASS carries the maximizer as radius and mu* (> 0) as both margin and the
/// `mu_star` witness; FAIL carries the best numerator as margin.
[[nodiscard]] Certificate radius_mu_star(const MuStarInput& in, const RadiusBracket& bracket = {});

/// Under ||A u|| <= a ||u||^p: r* = (1 / (a p))^{1/(p-1)} maximizes r - a r^p,
/// and every h with ||h|| < R = r* - a r*^p admits a fixed point in B_{r*}.
/// The radius is R; r* is the `r_star` witness.
[[nodiscard]] Certificate radius_power(double a, double p);

/// Smallest R > f0_norm with C (T^r + 1) = (R - f0_norm) / (R^r + 1).
/// FAIL reports the supremum of the right-hand side as margin.
[[nodiscard]] Certificate radius_c6(double C, double T, double r, double f0_norm);

/// Monte-Carlo falsification of ||u|| <= ||u - lambda B(u)|| for all lambda
/// in lambda_grid. Samples have the shape of `shape` and log-uniform
/// magnitudes in [1e-3, 1e3]. A PASS is evidence, not proof.
[[nodiscard]] Certificate check_expanding(const Operator& B, const GridFunction& shape, const SpaceSpec& s,
                                          std::size_t samples, const std::vector<double>& lambda_grid,
                                          std::uint64_t seed);

}  // namespace fpforge
