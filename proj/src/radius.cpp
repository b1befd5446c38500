#include "fpforge/radius.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fpforge/error.hpp"
#include "fpforge/rng.hpp"

namespace fpforge {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section maximization of f on [a, b].
template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iterations = 200) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iterations && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Scan f over a log grid of [lo, hi] in log space, then polish the best cell.
template <class F>
std::pair<double, double> log_grid_max(F&& f, double lo, double hi, std::size_t n) {
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  auto g = [&](double s) { return f(std::exp(s)); };
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  const double step = (lhi - llo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = g(llo + step * static_cast<double>(k));
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  const double a = llo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  const double b = llo + step * static_cast<double>(std::min(best + 1, n - 1));
  auto [s, v] = golden_max(g, a, b);
  if (v >= best_val) return {std::exp(s), v};
  return {std::exp(llo + step * static_cast<double>(best)), best_val};
}

}  // namespace

Certificate radius_mu_star(const MuStarInput& in, const RadiusBracket& bracket) {
  require(in.p > 1.0, "mu-star needs p > 1");
  require(in.q > 0.0 && in.q < 1.0, "mu-star needs q in (0, 1)");
  require(in.a >= 0.0 && in.b >= 0.0, "mu-star needs a, b >= 0");
  require(in.lam_b >= 0.0 && in.lam_b < 1.0, "mu-star needs lam_b in [0, 1)");
  require(bracket.lo > 0.0 && bracket.hi >= bracket.lo, "mu-star bracket must satisfy 0 < lo <= hi");

  auto numerator = [&](double R) { return R * (1.0 - in.lam_b) - in.a * std::pow(R, in.q) - in.b; };
  auto mu = [&](double R) { return numerator(R) / std::pow(R, in.p); };

  Certificate cert{CertificateKind::MuStar};
  double R = bracket.lo;
  double best = mu(R);
  if (bracket.hi > bracket.lo) std::tie(R, best) = log_grid_max(mu, bracket.lo, bracket.hi, 400);

  if (best > 0.0) {
    cert.verdict = Verdict::Pass;
    cert.radius = R;
    cert.margin = best;
    cert.witness = {{"mu_star", best}, {"R", R}, {"numerator", numerator(R)}};
    return cert;
  }
  double best_num = numerator(bracket.lo);
  double best_num_R = bracket.lo;
  if (bracket.hi > bracket.lo) std::tie(best_num_R, best_num) = log_grid_max(numerator, bracket.lo, bracket.hi, 400);
  cert.verdict = Verdict::Fail;
  cert.margin = best_num;
  cert.witness = {{"best_numerator", best_num}, {"at_R", best_num_R}};
  cert.note = "no R in the bracket with a positive numerator";
  return cert;
}

Certificate radius_power(double a, double p) {
  require(a > 0.0 && std::isfinite(a), "power radius needs a > 0");
  require(p > 1.0 && std::isfinite(p), "power radius needs p > 1");
  const double r_star = std::pow(1.0 / (a * p), 1.0 / (p - 1.0));
  const double R = r_star - a * std::pow(r_star, p);
  Certificate cert{CertificateKind::PowerRadius};
  cert.verdict = R > 0.0 ? Verdict::Pass : Verdict::Fail;
  cert.radius = R;
  cert.margin = R;
  cert.witness = {{"r_star", r_star}, {"delta_r", a * std::pow(r_star, p)}};
  return cert;
}

Certificate radius_c6(double C, double T, double r, double f0_norm) {
  require(C > 0.0 && T > 0.0, "c6 needs C > 0 and T > 0");
  require(r >= 0.0 && f0_norm >= 0.0, "c6 needs r >= 0 and f0_norm >= 0");
  const double lhs = C * (std::pow(T, r) + 1.0);
  // x = R - f0_norm > 0
  auto rhs = [&](double x) { return x / (std::pow(x + f0_norm, r) + 1.0); };

  const double unit = std::max(1.0, f0_norm);
  const double lo = 1e-12 * unit;
  const double hi = 1e12 * unit;
  const std::size_t n = 2401;
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / static_cast<double>(n - 1);

  Certificate cert{CertificateKind::C6Radius};
  cert.witness = {{"lhs", lhs}};
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::exp(llo + step * static_cast<double>(k));
    if (rhs(x) >= lhs) {
      double a = prev;
      double b = x;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double mid = 0.5 * (a + b);
        if (rhs(mid) >= lhs) b = mid;
        else a = mid;
      }
      const auto [xs, sup] = log_grid_max(rhs, lo, hi, n);
      cert.verdict = Verdict::Pass;
      cert.radius = f0_norm + b;
      cert.margin = std::max(0.0, sup - lhs);
      cert.witness.emplace_back("rhs_sup", sup);
      return cert;
    }
    prev = x;
  }
  const auto [xs, sup] = log_grid_max(rhs, lo, hi, n);
  cert.verdict = Verdict::Fail;
  cert.margin = sup;
  cert.witness.emplace_back("rhs_sup", sup);
  cert.witness.emplace_back("rhs_argmax_R", f0_norm + xs);
  cert.note = "right-hand side never reaches C (T^r + 1)";
  return cert;
}

Certificate check_expanding(const Operator& B, const GridFunction& shape, const SpaceSpec& s, std::size_t samples,
                            const std::vector<double>& lambda_grid, std::uint64_t seed) {
  require(samples >= 1, "expanding check needs at least one sample");
  require(!lambda_grid.empty(), "expanding check needs a lambda grid");
  for (double l : lambda_grid) require(l > 0.0, "expanding check lambdas must be positive");

  auto rng = substream(seed, "expanding");
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> log_mag(std::log(1e-3), std::log(1e3));

  Certificate cert{CertificateKind::Expanding};
  cert.verdict = Verdict::Pass;
  cert.margin = std::numeric_limits<double>::infinity();
  cert.note = "sampling evidence, not a proof";
  for (std::size_t i = 0; i < samples; ++i) {
    GridFunction u(shape.grid(), shape.dim());
    for (double& v : u.values()) v = gauss(rng);
    const double n0 = norm(u, s);
    if (n0 == 0.0) continue;
    u = scale(std::exp(log_mag(rng)) / n0, u);
    const double nu = norm(u, s);
    const GridFunction bu = B(u);
    for (double lambda : lambda_grid) {
      const double nd = norm(axpy(-lambda, bu, u), s);
      const double margin = nd - nu;
      if (margin < cert.margin) cert.margin = margin;
      if (nu > nd + 1e-12) {
        cert.verdict = Verdict::Fail;
        cert.witness = {{"sample", static_cast<double>(i)}, {"lambda", lambda}, {"norm_u", nu}, {"norm_diff", nd}};
        cert.note = "counterexample found";
        return cert;
      }
    }
  }
  cert.margin = std::max(cert.margin, 0.0);
  cert.witness = {{"samples", static_cast<double>(samples)}};
  return cert;
}

}  // namespace fpforge
