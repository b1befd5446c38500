#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fpforge/error.hpp"
#include "fpforge/geometry.hpp"
#include "support.hpp"

namespace fpforge {
namespace {

using testing::Gen;

std::vector<double> normalized(std::vector<double> v, double p) {
  const double n = vector_norm(v, p);
  for (double& x : v) x /= n;
  return v;
}

// 1 - ||(x + y) / 2|| for unit x, y: every sample bounds the true modulus
// at ||x - y|| from above.
double midpoint_defect(const std::vector<double>& x, const std::vector<double>& y, double p) {
  std::vector<double> m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = 0.5 * (x[i] + y[i]);
  return 1.0 - vector_norm(m, p);
}

double distance(const std::vector<double>& x, const std::vector<double>& y, double p) {
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return vector_norm(d, p);
}

TEST(Angle, SpecExamples) {
  const std::vector<double> x{1.0, -2.0, 0.5};
  const std::vector<double> mx{-1.0, 2.0, -0.5};
  EXPECT_NEAR(angle(x, x, 2.0), 0.0, 1e-15);
  EXPECT_NEAR(angle(x, mx, 2.0), 2.0, 1e-15);
  const std::vector<double> e1{1.0, 0.0};
  const std::vector<double> e2{0.0, 1.0};
  EXPECT_NEAR(angle(e1, e2, 2.0), std::sqrt(2.0), 1e-12);
}

TEST(Angle, ZeroArgumentIsDegenerate) {
  const std::vector<double> x{1.0, 0.0};
  const std::vector<double> z{0.0, 0.0};
  try {
    (void)angle(x, z, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateAngle);
  }
}

TEST(Angle, SymmetricScaleInvariantAndBounded) {
  Gen gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0, kInf}[gen.index(0, 4)];
    const auto x = gen.gaussian_vector(d);
    const auto y = gen.gaussian_vector(d);
    const double a = angle(x, y, p);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 2.0);
    EXPECT_NEAR(a, angle(y, x, p), 1e-12);
    std::vector<double> sx = x;
    std::vector<double> sy = y;
    const double cx = gen.magnitude(1e-6, 1e6);
    const double cy = gen.magnitude(1e-6, 1e6);
    for (double& v : sx) v *= cx;
    for (double& v : sy) v *= cy;
    EXPECT_NEAR(angle(sx, sy, p), a, 1e-12);
  }
}

TEST(Angle, GridFunctionsUseTheSpaceNorm) {
  const Grid g(1.0, 10);
  const GridFunction u = GridFunction::sample(g, [](double t) { return 1.0 + t; });
  const GridFunction v = scale(3.0, u);
  EXPECT_NEAR(angle(u, v, SpaceSpec::lp(2.0)), 0.0, 1e-14);
  EXPECT_NEAR(angle(u, scale(-1.0, u), SpaceSpec::sup()), 2.0, 1e-14);
}

TEST(Modulus, HilbertClosedForms) {
  const auto h = ConvexityProfile::hilbert();
  EXPECT_EQ(modulus(h, 0.0), 0.0);
  EXPECT_NEAR(modulus(h, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(modulus(h, 1.0), 1.0 - std::sqrt(3.0) / 2.0, 1e-9);
}

TEST(Modulus, HilbertMatchesPlanarGridSearch) {
  // Unit vectors at polar angles 0 and phi: ||x - y|| = 2 sin(phi / 2).
  const auto h = ConvexityProfile::hilbert();
  for (double eps : {0.5, 1.0, 1.5}) {
    double best = 0.0;
    for (int k = 0; k <= 200000; ++k) {
      const double phi = std::numbers::pi * k / 200000.0;
      const std::vector<double> x{1.0, 0.0};
      const std::vector<double> y{std::cos(phi), std::sin(phi)};
      if (std::abs(distance(x, y, 2.0) - eps) > 1e-4) continue;
      best = std::max(best, 1.0 - midpoint_defect(x, y, 2.0));
    }
    EXPECT_NEAR(1.0 - best, modulus(h, eps), 1e-3) << "eps = " << eps;
  }
}

TEST(Modulus, HilbertMatchesSamplingOracle) {
  // Random unit pairs in R^3 at distance eps: x, y = c m +- (eps / 2) o.
  Gen gen(12);
  const auto h = ConvexityProfile::hilbert();
  for (double eps : {0.5, 1.0, 1.5}) {
    double sup_mid = 0.0;
    for (int s = 0; s < 100000; ++s) {
      const auto m = normalized(gen.gaussian_vector(3), 2.0);
      auto o = gen.gaussian_vector(3);
      double dot = 0.0;
      for (int i = 0; i < 3; ++i) dot += o[i] * m[i];
      for (int i = 0; i < 3; ++i) o[i] -= dot * m[i];
      o = normalized(o, 2.0);
      const double c = std::sqrt(1.0 - eps * eps / 4.0);
      std::vector<double> x(3);
      std::vector<double> y(3);
      for (int i = 0; i < 3; ++i) {
        x[i] = c * m[i] + 0.5 * eps * o[i];
        y[i] = c * m[i] - 0.5 * eps * o[i];
      }
      ASSERT_NEAR(distance(x, y, 2.0), eps, 1e-12);
      sup_mid = std::max(sup_mid, 1.0 - midpoint_defect(x, y, 2.0));
    }
    EXPECT_NEAR(sup_mid, 1.0 - modulus(h, eps), 1e-3);
  }
}

TEST(Modulus, ClarksonAtTwoEqualsHilbert) {
  for (int k = 0; k <= 100; ++k) {
    const double eps = 0.02 * k;
    EXPECT_NEAR(modulus(ConvexityProfile::lp(2.0), eps), modulus(ConvexityProfile::hilbert(), eps), 1e-12);
  }
  EXPECT_NEAR(modulus(ConvexityProfile::lp(3.0), 1.0), 1.0 - std::cbrt(1.0 - 0.125), 1e-14);
}

TEST(Modulus, OutOfRangeIsRejected) {
  EXPECT_THROW((void)modulus(ConvexityProfile::hilbert(), -0.1), Error);
  EXPECT_THROW((void)modulus(ConvexityProfile::hilbert(), 2.1), Error);
}

TEST(Modulus, MonotoneAndBoundedForEveryProfile) {
  const std::vector<ConvexityProfile> profiles{
      ConvexityProfile::hilbert(), ConvexityProfile::lp(3.0), ConvexityProfile::lp(1.5), ConvexityProfile::lp(1.1),
      ConvexityProfile::table({{0.0, 0.0}, {1.0, 0.1}, {2.0, 0.6}})};
  for (const auto& prof : profiles) {
    double prev = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double d = modulus(prof, 2.0 * k / 1000.0);
      EXPECT_GE(d, prev - 1e-12) << prof.describe();
      EXPECT_LE(d, 1.0);
      if (k > 0) EXPECT_GT(d, 0.0) << prof.describe();
      prev = d;
    }
    EXPECT_EQ(modulus(prof, 0.0), 0.0);
  }
}

TEST(Modulus, LpProfilesAreLowerBoundsOnSampledPairs) {
  Gen gen(13);
  for (double p : {1.2, 1.5, 2.0, 3.0, 4.0}) {
    const auto prof = ConvexityProfile::lp(p);
    for (int s = 0; s < 20000; ++s) {
      const std::size_t d = gen.index(2, 5);
      const auto x = normalized(gen.gaussian_vector(d), p);
      auto y = x;
      const double spread = gen.magnitude(1e-3, 10.0);
      for (double& v : y) v += spread * gen.normal();
      y = normalized(y, p);
      const double eps = std::min(2.0, distance(x, y, p));
      EXPECT_GE(midpoint_defect(x, y, p), modulus(prof, eps) - 1e-12) << "p = " << p;
    }
  }
}

TEST(Profile, TableValidation) {
  EXPECT_THROW((void)ConvexityProfile::table({{0.1, 0.0}, {2.0, 1.0}}), Error);
  EXPECT_THROW((void)ConvexityProfile::table({{0.0, 0.0}, {1.0, 0.5}, {2.0, 0.4}}), Error);
  EXPECT_THROW((void)ConvexityProfile::table({{0.0, 0.0}, {1.9, 0.5}}), Error);
  EXPECT_THROW((void)ConvexityProfile::table({{0.0, 0.0}, {1.0, 0.0}, {2.0, 1.0}}), Error);
  EXPECT_NO_THROW((void)ConvexityProfile::table({{0.0, 0.0}, {2.0, 1.0}}));
}

TEST(Profile, TableCsv) {
  std::stringstream ss("eps,delta\n0,0\n1,0.25\n2,0.5\n");
  const auto prof = ConvexityProfile::table_csv(ss);
  EXPECT_EQ(prof.kind(), ProfileKind::Empirical);
  EXPECT_NEAR(modulus(prof, 0.5), 0.125, 1e-15);
  std::stringstream bad("eps,delta\n0,zero\n");
  EXPECT_THROW((void)ConvexityProfile::table_csv(bad), Error);
}

// Smallest eps0 on a fixed grid whose every split (grid of eps1) sums to >= 1/2.
double grid_epsilon0(const ConvexityProfile& prof, double step) {
  for (double e0 = step; e0 <= 4.0 + 1e-12; e0 += step) {
    const double lo = std::max(0.0, e0 - 2.0);
    const double hi = std::min(2.0, e0);
    bool ok = true;
    for (int k = 0; k <= 2000 && ok; ++k) {
      const double e1 = lo + (hi - lo) * k / 2000.0;
      ok = modulus(prof, e1) + modulus(prof, std::clamp(e0 - e1, 0.0, 2.0)) >= 0.5;
    }
    if (ok) return e0;
  }
  return NAN;
}

TEST(Epsilon0, HilbertIsRootSeven) {
  const double e0 = epsilon0(ConvexityProfile::hilbert());
  EXPECT_NEAR(e0, std::sqrt(7.0), 1e-6);
  EXPECT_NEAR(grid_epsilon0(ConvexityProfile::hilbert(), 1e-3), e0, 1.1e-3);
}

TEST(Epsilon0, LinearTableGivesTwo) {
  EXPECT_NEAR(epsilon0(ConvexityProfile::table({{0.0, 0.0}, {2.0, 0.5}})), 2.0, 1e-6);
}

TEST(Epsilon0, ClarksonTwoEqualsHilbert) {
  EXPECT_NEAR(epsilon0(ConvexityProfile::lp(2.0)), epsilon0(ConvexityProfile::hilbert()), 1e-6);
}

TEST(Epsilon0, WellDefinedForEveryProfile) {
  const std::vector<ConvexityProfile> profiles{ConvexityProfile::hilbert(), ConvexityProfile::lp(3.0),
                                               ConvexityProfile::lp(4.0), ConvexityProfile::lp(1.5),
                                               ConvexityProfile::table({{0.0, 0.0}, {2.0, 1.0}})};
  for (const auto& prof : profiles) {
    const double e0 = epsilon0(prof);
    const double lo = std::max(0.0, e0 - 2.0);
    const double hi = std::min(2.0, e0);
    for (int k = 0; k <= 10000; ++k) {
      const double e1 = lo + (hi - lo) * k / 10000.0;
      EXPECT_GE(modulus(prof, e1) + modulus(prof, std::clamp(e0 - e1, 0.0, 2.0)), 0.5 - 1e-9) << prof.describe();
    }
    EXPECT_LT(min_split_sum(prof, e0 - 1e-3).value, 0.5) << prof.describe();
    EXPECT_NEAR(grid_epsilon0(prof, 1e-3), e0, 1.1e-3) << prof.describe();
  }
}

TEST(Epsilon0, WeakProfileHasNone) {
  try {
    (void)epsilon0(ConvexityProfile::table({{0.0, 0.0}, {2.0, 0.2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoEpsilon0);
  }
}

TEST(StrongTriangle, SingleAndAlignedVectors) {
  const std::vector<double> v{1.0, 2.0, -2.0};
  const auto h = ConvexityProfile::hilbert();
  const auto one = strong_triangle_bound({v}, 2.0, h);
  EXPECT_NEAR(one.bound, 3.0, 1e-14);
  EXPECT_NEAR(one.lhs, 3.0, 1e-14);
  const auto two = strong_triangle_bound({v, v}, 2.0, h);
  EXPECT_NEAR(two.bound, 6.0, 1e-14);
  EXPECT_NEAR(two.lhs, 6.0, 1e-14);
}

TEST(StrongTriangle, DegenerateInputs) {
  const auto h = ConvexityProfile::hilbert();
  EXPECT_THROW((void)strong_triangle_bound({{1.0, 0.0}, {0.0, 0.0}}, 2.0, h), Error);
  EXPECT_THROW((void)strong_triangle_bound({{1.0, 0.0}, {-1.0, 0.0}}, 2.0, h), Error);
}

TEST(StrongTriangle, TenGaussianVectorsInR5) {
  Gen gen(14);
  const auto h = ConvexityProfile::hilbert();
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::vector<double>> vs;
    for (int i = 0; i < 10; ++i) vs.push_back(gen.gaussian_vector(5));
    const auto tb = strong_triangle_bound(vs, 2.0, h);
    EXPECT_LE(tb.lhs, tb.bound + 1e-10);
  }
}

TEST(StrongTriangle, BoundHoldsForMatchingLpProfiles) {
  Gen gen(15);
  std::size_t violations = 0;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto prof = ConvexityProfile::lp(p);
    for (int trial = 0; trial < 5000; ++trial) {
      const std::size_t d = gen.index(2, 8);
      std::vector<std::vector<double>> vs;
      const std::size_t k = gen.index(2, 6);
      for (std::size_t i = 0; i < k; ++i) vs.push_back(gen.gaussian_vector(d, gen.magnitude(1e-2, 1e2)));
      const auto tb = strong_triangle_bound(vs, p, prof);
      if (tb.lhs > tb.bound + 1e-10 * (1.0 + tb.lhs)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(StrongTriangle, GridFunctionsInLp) {
  Gen gen(16);
  const Grid g(1.0, 20);
  const auto prof = ConvexityProfile::lp(3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GridFunction> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(gen.gaussian_function(g, 2));
    const auto tb = strong_triangle_bound(vs, SpaceSpec::lp(3.0, 3.0), prof);
    EXPECT_LE(tb.lhs, tb.bound + 1e-10);
  }
}

TEST(ConeOpening, SpecExamples) {
  EXPECT_EQ(cone_opening({{1.0, 2.0}}, 2.0), 0.0);
  EXPECT_NEAR(cone_opening({{1.0, 2.0}, {-1.0, -2.0}}, 2.0), 2.0, 1e-15);
  EXPECT_NEAR(cone_opening({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, 2.0), std::sqrt(2.0), 1e-12);
  EXPECT_THROW((void)cone_opening({}, 2.0), Error);
  EXPECT_THROW((void)cone_opening({{0.0, 0.0}}, 2.0), Error);
}

GridFunction constant_vector(const Grid& g, std::vector<double> v) {
  return GridFunction::sample(g, v.size(), [v](double, std::span<double> out) {
    std::copy(v.begin(), v.end(), out.begin());
  });
}

TEST(CheckA5, VacuousCases) {
  const Grid g(1.0, 5);
  const auto h = ConvexityProfile::hilbert();
  const GridFunction e1 = constant_vector(g, {1.0, 0.0});
  EXPECT_EQ(check_a5(e1, GridFunction(g, 2), SpaceSpec::lp(2.0), h).verdict, Verdict::PassVacuous);
  EXPECT_EQ(check_a5(GridFunction(g, 2), e1, SpaceSpec::lp(2.0), h).verdict, Verdict::PassVacuous);
  EXPECT_EQ(check_a5(e1, scale(-1.0, e1), SpaceSpec::lp(2.0), h).verdict, Verdict::PassVacuous);
}

TEST(CheckA5, OrthogonalPairFailsByHandMargin) {
  const Grid g(1.0, 5);
  const Certificate c = check_a5(constant_vector(g, {1.0, 0.0}), constant_vector(g, {0.0, -1.0}),
                                 SpaceSpec::lp(2.0), ConvexityProfile::hilbert());
  EXPECT_EQ(c.verdict, Verdict::Fail);
  const double alpha = std::sqrt(2.0 - std::sqrt(2.0));
  EXPECT_NEAR(c.margin, 2.0 * alpha - std::sqrt(7.0), 1e-6);
  EXPECT_NEAR(*c.witness_value("alpha_a"), alpha, 1e-12);
}

TEST(CheckA5, ConeRemarkIsVacuousForRealSpaces) {
  // Openings are >= 0, so "opening <= 2 - eps0" needs eps0 <= 2; the
  // Hilbert modulus is the largest possible, hence the smallest eps0.
  EXPECT_LT(2.0 - epsilon0(ConvexityProfile::hilbert()), 0.0);
}

TEST(CheckA5, AntipodalNarrowConesPassWithWeakProfile) {
  // delta(eps) = eps / 2 gives eps0 = 1, so cones of opening <= 0.999 qualify.
  const auto prof = ConvexityProfile::table({{0.0, 0.0}, {2.0, 1.0}});
  const double e0 = epsilon0(prof);
  ASSERT_NEAR(e0, 1.0, 1e-6);
  Gen gen(17);
  const Grid g(1.0, 3);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = normalized(gen.gaussian_vector(4), 2.0);
    std::vector<std::vector<double>> cone;
    while (cone.size() < 8) {
      auto x = c;
      const double r = gen.uniform(0.0, 0.3);
      const double m = gen.magnitude(0.1, 10.0);
      const auto z = normalized(gen.gaussian_vector(4), 2.0);
      for (int i = 0; i < 4; ++i) x[i] = m * (x[i] + r * z[i]);
      cone.push_back(x);
    }
    if (cone_opening(cone, 2.0) > 2.0 - 1.0 - 1e-3) continue;
    for (const auto& a : cone) {
      for (const auto& b : cone) {
        std::vector<double> nb = b;
        for (double& v : nb) v = -v;
        const Certificate cert = check_a5(constant_vector(g, a), constant_vector(g, nb), SpaceSpec::sup(), e0);
        EXPECT_TRUE(cert.passed()) << "margin " << cert.margin;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000u);
}

}  // namespace
}  // namespace fpforge
