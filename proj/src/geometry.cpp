#include "fpforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpforge/error.hpp"

namespace fpforge {

namespace {

// Minimal adaptors so the angle / triangle / A5 logic is written once for
// plain R^d vectors and for grid functions.
struct EuclidLike {
  double p;
  [[nodiscard]] double norm(std::span<const double> x) const { return vector_norm(x, p); }
  [[nodiscard]] std::vector<double> lincomb(double a, std::span<const double> x, double b,
                                            std::span<const double> y) const {
    require(x.size() == y.size(), "vectors differ in dimension");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
  }
};

struct GridLike {
  SpaceSpec s;
  [[nodiscard]] double norm(const GridFunction& x) const { return fpforge::norm(x, s); }
  [[nodiscard]] GridFunction lincomb(double a, const GridFunction& x, double b,
                                     const GridFunction& y) const {
    return axpy(b, y, scale(a, x));
  }
};

template <class Space, class X, class Y>
double angle_impl(const Space& sp, const X& x, const Y& y) {
  const double nx = sp.norm(x);
  const double ny = sp.norm(y);
  if (!(nx > 0.0) || !(ny > 0.0)) {
    throw Error(ErrorCode::DegenerateAngle, "angle is only defined for nonzero vectors");
  }
  const double a = sp.norm(sp.lincomb(1.0 / nx, x, -1.0 / ny, y));
  return std::clamp(a, 0.0, 2.0);
}

template <class Space, class V>
TriangleBound triangle_impl(const Space& sp, const std::vector<V>& vs, const ConvexityProfile& profile) {
  require(!vs.empty(), "strong triangle bound needs at least one vector");
  V total = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i) total = sp.lincomb(1.0, total, 1.0, vs[i]);
  const double lhs = sp.norm(total);
  if (!(lhs > 0.0)) throw Error(ErrorCode::DegenerateAngle, "sum of vectors is zero");
  double bound = 0.0;
  for (const auto& v : vs) {
    const double alpha = angle_impl(sp, v, total);
    bound += (1.0 - 2.0 * modulus(profile, alpha)) * sp.norm(v);
  }
  return {bound, lhs};
}

template <class Space, class V>
Certificate a5_impl(const Space& sp, const V& au, const V& bu, double eps0) {
  Certificate cert{CertificateKind::A5};
  const double na = sp.norm(au);
  const double nb = sp.norm(bu);
  const auto sum = sp.lincomb(1.0, au, 1.0, bu);
  const double ns = sp.norm(sum);
  cert.witness = {{"norm_a", na}, {"norm_b", nb}, {"norm_sum", ns}, {"eps0", eps0}};
  if (na == 0.0 || nb == 0.0 || ns <= 1e-14 * (na + nb)) {
    cert.verdict = Verdict::PassVacuous;
    cert.margin = 0.0;
    cert.note = "degenerate: a zero term or zero sum";
    return cert;
  }
  const double alpha_a = angle_impl(sp, au, sum);
  const double alpha_b = angle_impl(sp, bu, sum);
  cert.witness.emplace_back("alpha_a", alpha_a);
  cert.witness.emplace_back("alpha_b", alpha_b);
  cert.margin = alpha_a + alpha_b - eps0;
  cert.verdict = cert.margin >= 0.0 ? Verdict::Pass : Verdict::Fail;
  return cert;
}

// Hanner: (1 - d + e/2)^p + |1 - d - e/2|^p = 2.
double hanner_modulus(double p, double eps) {
  if (eps <= 0.0) return 0.0;
  const double c = 0.5 * eps;
  auto excess = [&](double d) {
    const double x = 1.0 - d;
    return std::pow(x + c, p) + std::pow(std::abs(x - c), p) - 2.0;
  };
  double lo = 0.0;  // excess >= 0
  double hi = 1.0;  // excess <= 0
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) >= 0.0) lo = mid;
    else hi = mid;
  }
  // The lower end keeps the value a lower bound.
  return lo;
}

constexpr double kGolden = 0.6180339887498949;

}  // namespace

ConvexityProfile ConvexityProfile::hilbert() { return {ProfileKind::Hilbert, 2.0}; }

ConvexityProfile ConvexityProfile::lp(double p) {
  require(p > 1.0 && std::isfinite(p), "LP profile needs 1 < p < inf");
  return {p >= 2.0 ? ProfileKind::Lp : ProfileKind::LpSmall, p};
}

ConvexityProfile ConvexityProfile::table(std::vector<std::pair<double, double>> points) {
  require(points.size() >= 2, "modulus table needs at least two rows");
  std::sort(points.begin(), points.end());
  require(points.front().first == 0.0 && points.front().second == 0.0, "modulus table must start at (0, 0)");
  require(points.back().first == 2.0, "modulus table must end at eps = 2");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [e, d] = points[i];
    require(std::isfinite(e) && std::isfinite(d), "modulus table entries must be finite");
    require(d >= 0.0 && d <= 1.0, "modulus table values must lie in [0, 1]");
    if (i > 0) {
      require(e > points[i - 1].first, "modulus table eps values must be distinct");
      require(d >= points[i - 1].second, "modulus table must be nondecreasing");
      require(d > 0.0, "modulus table must be positive for eps > 0");
    }
  }
  ConvexityProfile out(ProfileKind::Empirical, 0.0);
  out.table_ = std::move(points);
  return out;
}

ConvexityProfile ConvexityProfile::table_csv(std::istream& is) {
  std::string line;
  std::vector<std::pair<double, double>> points;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("eps", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    require(comma != std::string::npos, "modulus table row needs two columns: " + line);
    try {
      points.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad number in modulus table: " + line);
    }
  }
  return table(std::move(points));
}

std::string ConvexityProfile::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ProfileKind::Hilbert: os << "hilbert"; break;
    case ProfileKind::Lp:
    case ProfileKind::LpSmall: os << "lp:" << p_; break;
    case ProfileKind::Empirical: os << "table(" << table_.size() << " rows)"; break;
  }
  return os.str();
}

double angle(std::span<const double> x, std::span<const double> y, double vector_p) {
  return angle_impl(EuclidLike{vector_p}, x, y);
}

double angle(const GridFunction& x, const GridFunction& y, const SpaceSpec& s) {
  return angle_impl(GridLike{s}, x, y);
}

double modulus(const ConvexityProfile& profile, double eps) {
  if (!(eps >= 0.0 && eps <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "modulus argument must lie in [0, 2]");
  }
  switch (profile.kind()) {
    case ProfileKind::Hilbert:
      return 1.0 - std::sqrt(std::max(0.0, 1.0 - 0.25 * eps * eps));
    case ProfileKind::Lp: {
      const double p = profile.p();
      return 1.0 - std::pow(std::max(0.0, 1.0 - std::pow(0.5 * eps, p)), 1.0 / p);
    }
    case ProfileKind::LpSmall:
      return hanner_modulus(profile.p(), eps);
    case ProfileKind::Empirical: {
      const auto& pts = profile.points();
      auto it = std::lower_bound(pts.begin(), pts.end(), eps,
                                 [](const auto& pt, double e) { return pt.first < e; });
      if (it == pts.begin()) return it->second;
      const auto& [e1, d1] = *it;
      const auto& [e0, d0] = *(it - 1);
      return d0 + (d1 - d0) * (eps - e0) / (e1 - e0);
    }
  }
  return 0.0;
}

SplitMinimum min_split_sum(const ConvexityProfile& profile, double eps0, std::size_t grid_points) {
  require(eps0 >= 0.0 && eps0 <= 4.0, "eps0 must lie in [0, 4]");
  require(grid_points >= 3, "split grid needs at least three points");
  const double lo = std::max(0.0, eps0 - 2.0);
  const double hi = std::min(2.0, eps0);
  auto f = [&](double e1) {
    const double e2 = std::clamp(eps0 - e1, 0.0, 2.0);
    return modulus(profile, std::clamp(e1, 0.0, 2.0)) + modulus(profile, e2);
  };
  if (hi - lo <= 0.0) return {f(lo), lo};

  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_val = f(lo);
  for (std::size_t k = 1; k < grid_points; ++k) {
    const double v = f(lo + step * static_cast<double>(k));
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  SplitMinimum out{best_val, lo + step * static_cast<double>(best)};

  // Golden-section refinement in the bracketing cells.
  double a = lo + step * static_cast<double>(best == 0 ? 0 : best - 1);
  double b = lo + step * static_cast<double>(std::min(best + 1, grid_points - 1));
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
    if (fc < fd) {
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
  for (auto [x, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (v < out.value) out = {v, x};
  }
  return out;
}

double epsilon0(const ConvexityProfile& profile) {
  if (min_split_sum(profile, 4.0).value < 0.5) {
    throw Error(ErrorCode::NoEpsilon0, "modulus never reaches 1/4 on [0, 2] (" + profile.describe() + ")");
  }
  double lo = 0.0;
  double hi = 4.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (min_split_sum(profile, mid).value >= 0.5) hi = mid;
    else lo = mid;
  }
  return hi;
}

TriangleBound strong_triangle_bound(const std::vector<std::vector<double>>& vs, double vector_p,
                                    const ConvexityProfile& profile) {
  return triangle_impl(EuclidLike{vector_p}, vs, profile);
}

TriangleBound strong_triangle_bound(const std::vector<GridFunction>& vs, const SpaceSpec& s,
                                    const ConvexityProfile& profile) {
  return triangle_impl(GridLike{s}, vs, profile);
}

double cone_opening(const std::vector<std::vector<double>>& xs, double vector_p) {
  require(!xs.empty(), "cone opening needs at least one vector");
  const EuclidLike sp{vector_p};
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // angle(x, x) also rejects a zero vector in a singleton sample.
    for (std::size_t j = i; j < xs.size(); ++j) best = std::max(best, angle_impl(sp, xs[i], xs[j]));
  }
  return best;
}

Certificate check_a5(const GridFunction& au, const GridFunction& bu, const SpaceSpec& s,
                     const ConvexityProfile& profile) {
  return check_a5(au, bu, s, epsilon0(profile));
}

Certificate check_a5(const GridFunction& au, const GridFunction& bu, const SpaceSpec& s, double eps0) {
  return a5_impl(GridLike{s}, au, bu, eps0);
}

Certificate check_a5(std::span<const double> au, std::span<const double> bu, double vector_p, double eps0) {
  return a5_impl(EuclidLike{vector_p}, au, bu, eps0);
}

}  // namespace fpforge
