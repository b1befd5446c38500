#pragma once

// Quantitative geometry of uniformly convex spaces: angles between
// directions, moduli of convexity, the split threshold epsilon0, cone
// openings and the strengthened triangle inequality.

#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpforge/certificate.hpp"
#include "fpforge/space.hpp"

namespace fpforge {

enum class ProfileKind { Hilbert, Lp, LpSmall, Empirical };

class ConvexityProfile {
 public:
  static ConvexityProfile hilbert();
  /// Clarkson form for p >= 2, Hanner's implicit form for 1 < p < 2.
  static ConvexityProfile lp(double p);
  /// Sampled (eps, delta) pairs; must start at (0, 0), end at eps = 2 and be
  /// nondecreasing with delta in [0, 1] and delta > 0 for eps > 0.
  static ConvexityProfile table(std::vector<std::pair<double, double>> points);
  /// Reads an `eps,delta` CSV.
  static ConvexityProfile table_csv(std::istream& is);

  [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] const std::vector<std::pair<double, double>>& points() const noexcept { return table_; }
  [[nodiscard]] std::string describe() const;

 private:
  ConvexityProfile(ProfileKind kind, double p) : kind_(kind), p_(p) {}

  ProfileKind kind_;
  double p_;
  std::vector<std::pair<double, double>> table_;
};

/// ||x/||x|| - y/||y|||| in the vector p-norm. Throws DegenerateAngle on zero input.
[[nodiscard]] double angle(std::span<const double> x, std::span<const double> y, double vector_p);
[[nodiscard]] double angle(const GridFunction& x, const GridFunction& y, const SpaceSpec& s);

/// Lower bound for the modulus of convexity delta(eps), eps in [0, 2].
[[nodiscard]] double modulus(const ConvexityProfile& profile, double eps);

/// min over feasible splits eps1 + eps2 = eps0 of delta(eps1) + delta(eps2),
/// together with the minimizing eps1.
struct SplitMinimum {
  double value;
  double eps1;
};
[[nodiscard]] SplitMinimum min_split_sum(const ConvexityProfile& profile, double eps0,
                                         std::size_t grid_points = 10000);

/// Smallest eps0 in (0, 4] whose every split satisfies delta + delta >= 1/2.
[[nodiscard]] double epsilon0(const ConvexityProfile& profile);

struct TriangleBound {
  double bound;  ///< sum (1 - 2 delta(alpha_i)) ||v_i||
  double lhs;    ///< ||sum v_i||
};

[[nodiscard]] TriangleBound strong_triangle_bound(const std::vector<std::vector<double>>& vs,
                                                  double vector_p, const ConvexityProfile& profile);
[[nodiscard]] TriangleBound strong_triangle_bound(const std::vector<GridFunction>& vs,
                                                  const SpaceSpec& s, const ConvexityProfile& profile);

/// Largest pairwise angle in a finite sample of a cone.
[[nodiscard]] double cone_opening(const std::vector<std::vector<double>>& xs, double vector_p);

/// Monotonicity condition check: alpha(Au, Au+Bu) + alpha(Bu, Au+Bu) >= eps0.
/// A zero term or a zero sum gives PASS-VACUOUS. The eps0 overloads take a
/// precomputed threshold.
[[nodiscard]] Certificate check_a5(const GridFunction& au, const GridFunction& bu, const SpaceSpec& s,
                                   const ConvexityProfile& profile);
[[nodiscard]] Certificate check_a5(const GridFunction& au, const GridFunction& bu, const SpaceSpec& s,
                                   double eps0);
[[nodiscard]] Certificate check_a5(std::span<const double> au, std::span<const double> bu,
                                   double vector_p, double eps0);

}  // namespace fpforge
