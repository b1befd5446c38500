#include <gtest/gtest.h>

#include <cmath>

#include "fpforge/engine.hpp"
#include "support.hpp"

namespace fpforge {
namespace {

using testing::constant;
using testing::Gen;

Operator pointwise(std::function<double(double)> fn) {
  return [fn](const GridFunction& u) {
    GridFunction out = u;
    for (double& x : out.values()) x = fn(x);
    return out;
  };
}

Operator constant_op(double c) {
  return [c](const GridFunction& u) { return constant(u.grid(), c); };
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0.0) == (f(mid) < 0.0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

const Grid kGrid(1.0, 4);
const SpaceSpec kSup = SpaceSpec::sup();

TEST(Resolvent, GeometricSeries) {
  const auto r = resolve_contraction(pointwise([](double x) { return 0.5 * x; }), 0.5, constant(kGrid, 1.0), kSup,
                                     1e-13, 1000);
  for (double x : r.u.values()) EXPECT_NEAR(x, 2.0, 1e-12);
}

TEST(Resolvent, ZeroOperatorIsIdentity) {
  const GridFunction w = GridFunction::sample(kGrid, [](double t) { return std::sin(3.0 * t); });
  const auto r = resolve_contraction(constant_op(0.0), 0.0, w, kSup, 1e-12, 10);
  EXPECT_EQ(r.u.values(), w.values());
}

TEST(Resolvent, HalfSineMatchesBisection) {
  const double oracle = bisect([](double u) { return u - 0.5 * std::sin(u) - 1.0; }, 1.0, 2.0);
  const auto r = resolve_contraction(pointwise([](double x) { return 0.5 * std::sin(x); }), 0.5,
                                     constant(kGrid, 1.0), kSup, 1e-12, 1000);
  EXPECT_NEAR(r.u(0), oracle, 1e-10);
  EXPECT_NEAR(r.u(0), 1.4987, 1e-4);
}

TEST(Resolvent, RandomAffineMatchesClosedForm) {
  Gen gen(21);
  for (int trial = 0; trial < 500; ++trial) {
    const double slope = gen.uniform(-0.95, 0.95);
    const double shift = gen.uniform(-5.0, 5.0);
    const double w = gen.uniform(-5.0, 5.0);
    const auto r = resolve_contraction(pointwise([=](double x) { return slope * x + shift; }), std::abs(slope),
                                       constant(kGrid, w), kSup, 1e-13, 100000);
    EXPECT_NEAR(r.u(2), (shift + w) / (1.0 - slope), 1e-10) << "slope " << slope;
  }
}

TEST(Resolvent, BanachRateHoldsOnEveryStep) {
  Gen gen(22);
  const Grid g(1.0, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const double c = gen.uniform(0.05, 0.95);
    const Operator B = pointwise([c](double x) { return c * std::sin(x); });
    const GridFunction w = gen.gaussian_function(g, 1, 3.0);
    const auto r = resolve_contraction(B, c, w, kSup, 1e-12, 10000);
    const double first = r.residuals.front();
    for (std::size_t k = 0; k < r.residuals.size(); ++k) {
      EXPECT_LE(r.residuals[k], std::pow(c, static_cast<double>(k)) / (1.0 - c) * first + 1e-12);
    }
    EXPECT_LE(r.iterations, r.a_priori_steps + 1);
  }
}

TEST(Resolvent, RejectsNonContraction) {
  try {
    (void)resolve_contraction(constant_op(0.0), 1.0, constant(kGrid, 1.0), kSup, 1e-8, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAContraction);
  }
}

TEST(Resolvent, BudgetExhaustionReportsResidual) {
  try {
    (void)resolve_contraction(pointwise([](double x) { return 0.99 * x; }), 0.99, constant(kGrid, 1.0), kSup,
                              1e-12, 5);
    FAIL();
  } catch (const NoConvergence& e) {
    EXPECT_GT(e.last_residual(), 1e-12);
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(Krasnoselskii, ConstantPlusLinear) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return 0.5 * x; }), 0.5};
  const auto rep = krasnoselskii_solve(pair, constant(kGrid, 0.0), kSup, {});
  ASSERT_TRUE(rep.converged);
  for (double x : rep.final.values()) EXPECT_NEAR(x, 2.0, 1e-8);
  EXPECT_LE(rep.iterations, 200u);
}

TEST(Krasnoselskii, ZeroSolution) {
  const OperatorPair pair{constant_op(0.0), pointwise([](double x) { return 0.5 * x; }), 0.5};
  const auto rep = krasnoselskii_solve(pair, constant(kGrid, 3.0), kSup, {});
  ASSERT_TRUE(rep.converged);
  for (double x : rep.final.values()) EXPECT_NEAR(x, 0.0, 1e-8);
}

TEST(Krasnoselskii, ConvergedFinalIsAFixedPoint) {
  Gen gen(23);
  const Grid g(2.0, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = gen.uniform(0.0, 0.9);
    const double b = gen.uniform(0.0, 0.9);
    const GridFunction h = gen.gaussian_function(g, 1);
    const OperatorPair pair{[a, h](const GridFunction& u) { return axpy(a, cumulative_integral(u), h); },
                            pointwise([b](double x) { return b * std::cos(x); }), b};
    for (const SpaceSpec& s : {SpaceSpec::sup(), SpaceSpec::lp(2.0)}) {
      SolveOptions opts;
      opts.tol = 1e-9;
      const auto rep = krasnoselskii_solve(pair, GridFunction(g, 1), s, opts);
      ASSERT_TRUE(rep.converged);
      const GridFunction& u = rep.final;
      EXPECT_LE(norm(u - pair.A(u) - pair.B(u), s), opts.tol);
      EXPECT_LE(rep.history.back().residual, opts.tol);
      EXPECT_EQ(rep.history.size(), rep.iterations + 1);
    }
  }
}

TEST(Krasnoselskii, MembershipViolationsAreCounted) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return 0.5 * x; }), 0.5};
  const auto rep = krasnoselskii_solve(pair, constant(kGrid, 0.0), kSup, {},
                                       [](const GridFunction& u) { return u(0) < 1.5; });
  ASSERT_TRUE(rep.converged);
  EXPECT_GT(rep.membership_violations, 0u);
  EXPECT_FALSE(rep.history.back().membership_ok);
}

TEST(Krasnoselskii, OuterBudgetExhaustion) {
  // T(u) = 2u + 1 via A = 2u + 1, B = 0: Picard diverges.
  const OperatorPair pair{pointwise([](double x) { return 2.0 * x + 1.0; }), constant_op(0.0), 0.0};
  SolveOptions opts;
  opts.max_outer = 20;
  try {
    (void)krasnoselskii_solve(pair, constant(kGrid, 0.0), kSup, opts);
    FAIL();
  } catch (const NoConvergence& e) {
    ASSERT_TRUE(e.report().has_value());
    EXPECT_FALSE(e.report()->converged);
  }
}

TEST(Krasnoselskii, RejectsNonContraction) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return x; }), 1.0};
  try {
    (void)krasnoselskii_solve(pair, constant(kGrid, 0.0), kSup, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAContraction);
  }
}

TEST(Continuation, NonexpansiveNegation) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return -x; }), 1.0};
  SolveOptions opts;
  opts.tol = 1e-10;
  const auto rep = continuation_solve(pair, {0.5, 0.9, 0.99, 1.0}, constant(kGrid, 0.0), kSup, opts);
  ASSERT_EQ(rep.stages.size(), 4u);
  for (const auto& stage : rep.stages) {
    EXPECT_NEAR(stage.report.final(0), 1.0 / (1.0 + stage.lambda), 1e-9) << "lambda " << stage.lambda;
  }
  EXPECT_NEAR(rep.final().final(0), 0.5, opts.tol);
}

TEST(Continuation, ContractiveB) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return 0.9 * x; }), 0.9};
  SolveOptions opts;
  opts.tol = 1e-10;
  opts.max_outer = 1000;
  const auto rep = continuation_solve(pair, {0.5, 1.0}, constant(kGrid, 0.0), kSup, opts);
  EXPECT_NEAR(rep.stages[0].report.final(0), 1.0 / 0.55, 1e-8);
  EXPECT_NEAR(rep.final().final(0), 10.0, 1e-8);
}

TEST(Continuation, ZeroLipschitzMatchesPlainSolve) {
  const Grid g(1.0, 16);
  const OperatorPair pair{[](const GridFunction& u) {
                            return axpy(0.5, cumulative_integral(u), constant(u.grid(), 1.0));
                          },
                          constant_op(0.0), 0.0};
  const auto plain = krasnoselskii_solve(pair, GridFunction(g, 1), kSup, {});
  const auto cont = continuation_solve(pair, {0.3, 0.7, 1.0}, GridFunction(g, 1), kSup, {});
  for (const auto& stage : cont.stages) EXPECT_EQ(stage.report.final.values(), plain.final.values());
}

TEST(Continuation, ScheduleValidation) {
  const OperatorPair pair{constant_op(1.0), constant_op(0.0), 0.0};
  const GridFunction u0(kGrid, 1);
  EXPECT_THROW((void)continuation_solve(pair, {}, u0, kSup, {}), Error);
  EXPECT_THROW((void)continuation_solve(pair, {0.5}, u0, kSup, {}), Error);
  EXPECT_THROW((void)continuation_solve(pair, {0.7, 0.5, 1.0}, u0, kSup, {}), Error);
  EXPECT_THROW((void)continuation_solve(pair, {0.0, 1.0}, u0, kSup, {}), Error);
  const OperatorPair expanding{constant_op(1.0), constant_op(0.0), 1.5};
  EXPECT_THROW((void)continuation_solve(expanding, {1.0}, u0, kSup, {}), Error);
}

TEST(Continuation, StalledStageKeepsLastGood) {
  // The final stage has a nonexpansive B with no fixed point: u = u + 1.
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return x; }), 1.0};
  SolveOptions opts;
  opts.max_outer = 5;
  opts.max_inner = 50;
  try {
    (void)continuation_solve(pair, {0.5, 1.0}, constant(kGrid, 0.0), kSup, opts);
    FAIL();
  } catch (const ContinuationStalled& e) {
    EXPECT_EQ(e.failed_lambda(), 1.0);
    ASSERT_TRUE(e.last_good().has_value());
    EXPECT_NEAR(e.last_good()->report.final(0), 2.0, 1e-7);
  }
}

TEST(ReduceParameter, LambdaZero) {
  const OperatorPair pair{constant_op(1.0), pointwise([](double x) { return 5.0 * x; }), 5.0};
  const auto red = reduce_parameter(pair, 0.0);
  EXPECT_EQ(red.b_lip, 0.0);
  const GridFunction u = constant(kGrid, 3.0);
  const GridFunction bu = red.B(u);
  const GridFunction au = red.A(u);
  for (double x : bu.values()) EXPECT_EQ(x, 0.0);
  for (double x : au.values()) EXPECT_EQ(x, 1.0);
}

TEST(ReduceParameter, ContractionFactor) {
  const OperatorPair pair{constant_op(0.0), pointwise([](double x) { return 2.0 * x; }), 2.0};
  EXPECT_NEAR(reduce_parameter(pair, 1.0).b_lip, 2.0 / 3.0, 1e-15);
}

TEST(ReduceParameter, NegativeLambdaIsRejected) {
  const OperatorPair pair{constant_op(0.0), constant_op(0.0), 1.0};
  EXPECT_THROW((void)reduce_parameter(pair, -0.5), Error);
}

TEST(ReduceParameter, ResidualIdentity) {
  Gen gen(24);
  const Grid g(1.0, 25);
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = gen.magnitude(1e-3, 1e3);
    const double c = gen.uniform(-3.0, 3.0);
    const OperatorPair pair{pointwise([](double x) { return std::atan(x) + 0.3; }),
                            pointwise([c](double x) { return c * std::sin(x); }), std::abs(c)};
    const auto red = reduce_parameter(pair, lambda);
    const GridFunction u = gen.gaussian_function(g, 1, 2.0);
    const GridFunction lhs = red.A(u) + red.B(u) - u;
    const GridFunction rhs = scale(1.0 / (1.0 + lambda * std::abs(c)), axpy(lambda, pair.B(u), pair.A(u)) - u);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(lhs(i), rhs(i), 1e-12 * (1.0 + std::abs(rhs(i))));
  }
}

TEST(ReduceParameter, SameFixedPointOnAffineMaps) {
  Gen gen(25);
  for (int trial = 0; trial < 200; ++trial) {
    const double a0 = gen.uniform(-2.0, 2.0);
    const double a1 = gen.uniform(-0.5, 0.5);
    const double b1 = -gen.magnitude(0.01, 10.0);
    const double lambda = gen.magnitude(0.01, 10.0);
    // u = a0 + a1 u + lambda b1 u
    const double exact = a0 / (1.0 - a1 - lambda * b1);
    const OperatorPair pair{pointwise([=](double x) { return a0 + a1 * x; }),
                            pointwise([=](double x) { return b1 * x; }), std::abs(b1)};
    const auto red = reduce_parameter(pair, lambda);
    SolveOptions opts;
    opts.tol = 1e-12;
    opts.max_outer = 100000;
    const auto rep = krasnoselskii_solve(red, constant(kGrid, 0.0), kSup, opts);
    ASSERT_TRUE(rep.converged);
    EXPECT_NEAR(rep.final(0), exact, 1e-10);
  }
}

}  // namespace
}  // namespace fpforge
