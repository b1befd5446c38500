#include "fpforge/integral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpforge/error.hpp"

namespace fpforge {

namespace {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm, double whole, double tol,
                    int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson with Richardson correction.
template <class F>
double integrate(F&& f, double a, double b, double tol) {
  if (b == a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

std::vector<double> eval_at_zero(const VecMap& f, std::size_t dim) {
  std::vector<double> zero(dim, 0.0);
  std::vector<double> out(dim, 0.0);
  f(zero, out);
  return out;
}

std::string node_message(const char* what, std::size_t i, double t) {
  std::ostringstream os;
  os << what << " at node " << i << " (t = " << t << ")";
  return os.str();
}

}  // namespace

GridFunction bound_b(const VolterraProblem& prob) {
  require(prob.lam >= 0.0 && prob.lam < 1.0, "Volterra problem needs lam < 1");
  const Grid& grid = prob.grid;
  const double f0 = vector_norm(eval_at_zero(prob.f, prob.dim), prob.vector_p);

  GridFunction alpha = GridFunction::sample(grid, [&](double t) {
    const double a = prob.alpha(t);
    require(a >= 0.0, "alpha must be nonnegative");
    return a;
  });
  const GridFunction alpha_int = cumulative_integral(alpha);

  auto inv_phi = [&](double x) {
    const double v = prob.phi(x);
    require(v > 0.0 && std::isfinite(v), "phi must be positive and finite");
    return 1.0 / v;
  };

  constexpr double kCap = 1e12;
  GridFunction b(grid, 1);
  b.at(0)[0] = f0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double z0 = b(i - 1);
    const double need = alpha_int(i) - alpha_int(i - 1);
    if (need <= 0.0) {
      b.at(i)[0] = z0;
      continue;
    }
    auto J = [&](double z) { return integrate(inv_phi, z0, z, 1e-15 * std::max(1.0, need)); };
    // phi nondecreasing => J(z0 + need * phi(z0)) <= need; grow past it by doubling.
    double gap = std::max(need * prob.phi(z0), 1e-300);
    double hi = z0 + gap;
    while (J(hi) < need) {
      gap *= 2.0;
      hi = z0 + gap;
      if (hi > kCap) {
        throw Error(ErrorCode::BlowupBeforeT,
                    node_message("growth bound blows up before T: integral of 1/phi cannot absorb alpha", i,
                                 grid.node(i)));
      }
    }
    double lo = z0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (J(mid) < need) lo = mid;
      else hi = mid;
    }
    b.at(i)[0] = hi;
  }
  return b;
}

GridFunction volterra_A(const VolterraProblem& prob, const GridFunction& u) {
  if (!(u.grid() == prob.grid) || u.dim() != prob.dim) {
    throw Error(ErrorCode::GridMismatch, "Volterra operator applied to a function on another grid");
  }
  GridFunction integrand(prob.grid, prob.dim);
  for (std::size_t i = 0; i < u.size(); ++i) prob.g(prob.grid.node(i), u.at(i), integrand.at(i));
  GridFunction out = cumulative_integral(integrand);
  const auto f0 = eval_at_zero(prob.f, prob.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto row = out.at(i);
    for (std::size_t k = 0; k < prob.dim; ++k) row[k] += f0[k];
  }
  return out;
}

GridFunction volterra_B(const VolterraProblem& prob, const GridFunction& u) {
  if (!(u.grid() == prob.grid) || u.dim() != prob.dim) {
    throw Error(ErrorCode::GridMismatch, "Volterra operator applied to a function on another grid");
  }
  const auto f0 = eval_at_zero(prob.f, prob.dim);
  GridFunction out(prob.grid, prob.dim);
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto row = out.at(i);
    prob.f(u.at(i), row);
    for (std::size_t k = 0; k < prob.dim; ++k) row[k] -= f0[k];
  }
  return out;
}

VolterraResult solve_volterra(const VolterraProblem& prob, const SolveOptions& opts) {
  GridFunction b = bound_b(prob);
  const OperatorPair pair{[&](const GridFunction& u) { return volterra_A(prob, u); },
                          [&](const GridFunction& u) { return volterra_B(prob, u); }, prob.lam};
  const SpaceSpec s = SpaceSpec::sup(prob.vector_p);
  auto inside = [&](const GridFunction& u) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (vector_norm(u.at(i), prob.vector_p) > b(i) * (1.0 + 1e-9) + 1e-12) return false;
    }
    return true;
  };

  VolterraResult out{krasnoselskii_solve(pair, GridFunction(prob.grid, prob.dim), s, opts, inside), b};
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double n = vector_norm(out.report.final.at(i), prob.vector_p);
    if (b(i) > 0.0) out.tightness = std::max(out.tightness, n / b(i));
  }
  return out;
}

LipschitzCheck lipschitz_check(const GridFunction& u, double radius, double vector_p) {
  const double sup = norm(u, SpaceSpec::sup(vector_p));
  const double w1 = norm(u, SpaceSpec::w1inf(vector_p));
  const double slope = w1 - sup;
  return {sup, slope, w1, sup <= radius && slope <= radius};
}

GridFunction kernel_apply(const HammersteinProblem& prob, const GridFunction& u) {
  if (!(u.grid() == prob.grid) || u.dim() != prob.dim) {
    throw Error(ErrorCode::GridMismatch, "kernel applied to a function on another grid");
  }
  const Grid& grid = prob.grid;
  const double h = grid.h();
  GridFunction out(grid, prob.dim);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid.node(i);
    auto row = out.at(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const double w = (j == 0 || j == i) ? 0.5 * h : h;
      const double kw = w * prob.k(t, grid.node(j));
      auto uj = u.at(j);
      for (std::size_t c = 0; c < prob.dim; ++c) row[c] += kw * uj[c];
    }
  }
  return out;
}

double kernel_bound(const HammersteinProblem& prob) {
  require(prob.p > 1.0 && std::isfinite(prob.p), "Hammerstein exponent p must lie in (1, inf)");
  const double q = prob.p / (prob.p - 1.0);
  const Grid& grid = prob.grid;
  const double h = grid.h();
  double C = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid.node(i);
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      const double w = (j == 0 || j == i) ? 0.5 * h : h;
      acc += w * std::pow(std::abs(prob.k(t, grid.node(j))), q);
    }
    C = std::max(C, std::pow(acc, 1.0 / q));
  }
  return C;
}

namespace {

GridFunction f_at_zero(const HammersteinProblem& prob) {
  const std::vector<double> zero(prob.dim, 0.0);
  return GridFunction::sample(prob.grid, prob.dim, [&](double t, std::span<double> out) { prob.f(t, zero, out); });
}

}  // namespace

Certificate ball_certificate_a3(const HammersteinProblem& prob) {
  const SpaceSpec s = prob.space();
  const double f0p = norm(f_at_zero(prob), s);
  const double gp = norm(GridFunction::sample(prob.grid, [&](double t) { return prob.G(t); }), s);
  const double C = kernel_bound(prob);
  auto ratio = [&](double R) { return gp * prob.psi(C * R) / (R - f0p); };

  Certificate cert{CertificateKind::BallA3};
  cert.witness = {{"C", C}, {"G_p", gp}, {"f0_p", f0p}};

  const double lo = f0p > 0.0 ? f0p * (1.0 + 1e-6) : 1e-6;
  const double hi = 1e6;
  const std::size_t n = 1201;
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(n - 1);
  double best = std::numeric_limits<double>::infinity();
  double prev = lo;
  for (std::size_t k = 0; k < n; ++k) {
    const double R = k == 0 ? lo : std::exp(llo + step * static_cast<double>(k));
    const double v = ratio(R);
    best = std::min(best, v);
    if (v <= 1.0) {
      double a = prev;
      double b = R;
      if (k > 0) {
        for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
          const double mid = 0.5 * (a + b);
          if (ratio(mid) <= 1.0) b = mid;
          else a = mid;
        }
      }
      cert.verdict = Verdict::Pass;
      cert.radius = b;
      cert.margin = 1.0 - ratio(b);
      cert.witness.emplace_back("ratio", ratio(b));
      return cert;
    }
    prev = R;
  }
  cert.verdict = Verdict::Fail;
  cert.margin = best;
  cert.note = "ball ratio stays above 1 on the scanned radii";
  return cert;
}

GridFunction hammerstein_A(const HammersteinProblem& prob, const GridFunction& u) {
  const GridFunction ku = kernel_apply(prob, u);
  const std::vector<double> zero(prob.dim, 0.0);
  GridFunction out(prob.grid, prob.dim);
  std::vector<double> f0(prob.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = prob.grid.node(i);
    auto row = out.at(i);
    prob.Phi(t, ku.at(i), row);
    prob.f(t, zero, f0);
    for (std::size_t c = 0; c < prob.dim; ++c) row[c] += f0[c];
  }
  return out;
}

GridFunction hammerstein_B(const HammersteinProblem& prob, const GridFunction& u) {
  if (!(u.grid() == prob.grid) || u.dim() != prob.dim) {
    throw Error(ErrorCode::GridMismatch, "Hammerstein operator applied to a function on another grid");
  }
  const std::vector<double> zero(prob.dim, 0.0);
  GridFunction out(prob.grid, prob.dim);
  std::vector<double> f0(prob.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = prob.grid.node(i);
    auto row = out.at(i);
    prob.f(t, u.at(i), row);
    prob.f(t, zero, f0);
    for (std::size_t c = 0; c < prob.dim; ++c) row[c] -= f0[c];
  }
  return out;
}

HammersteinResult solve_hammerstein(const HammersteinProblem& prob, const ConvexityProfile& profile,
                                    const HammersteinOptions& opts) {
  HammersteinResult out{{}, ball_certificate_a3(prob)};
  const bool certified = out.ball.passed();
  if (!certified && !opts.override_certificate) {
    std::ostringstream os;
    os << "ball certificate (A3) failed with minimal ratio " << out.ball.margin;
    throw Error(ErrorCode::CertificateRequired, os.str());
  }
  out.eps0 = epsilon0(profile);
  const SpaceSpec s = prob.space();
  const double radius = certified ? *out.ball.radius : 0.0;

  const OperatorPair pair{[&](const GridFunction& u) { return hammerstein_A(prob, u); },
                          [&](const GridFunction& u) { return hammerstein_B(prob, u); }, prob.f_lip};
  Membership in_ball;
  if (certified) in_ball = [&](const GridFunction& u) { return norm(u, s) <= radius * (1.0 + 1e-9); };

  std::vector<double> margins;
  auto observe = [&](const IterateView& view) {
    const Certificate a5 = check_a5(view.Au, view.Bu, s, out.eps0);
    switch (a5.verdict) {
      case Verdict::PassVacuous:
        ++out.a5_vacuous;
        margins.push_back(std::numeric_limits<double>::quiet_NaN());
        return;
      case Verdict::Fail: ++out.a5_fail; break;
      case Verdict::Pass: ++out.a5_pass; break;
    }
    margins.push_back(a5.margin);
    if (a5.verdict == Verdict::Pass && certified) {
      const double delta_sum = modulus(profile, *a5.witness_value("alpha_a")) +
                               modulus(profile, *a5.witness_value("alpha_b"));
      if (radius * (2.0 - 2.0 * delta_sum) > radius * (1.0 + 1e-12)) ++out.lemma_ball_violations;
    }
  };

  out.report = krasnoselskii_solve(pair, GridFunction(prob.grid, prob.dim), s, opts.solve, in_ball, observe);
  for (std::size_t k = 0; k < out.report.history.size() && k < margins.size(); ++k) {
    out.report.history[k].a5_margin = margins[k];
  }
  if (certified) {
    const GridFunction& u = out.report.final;
    const double image = norm(hammerstein_A(prob, u) + hammerstein_B(prob, u), s);
    if (image > radius * (1.0 + 1e-9)) out.hard_a5_blocks = 1;
  }
  return out;
}

}  // namespace fpforge
