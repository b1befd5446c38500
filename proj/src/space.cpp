#include "fpforge/space.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fpforge/error.hpp"

namespace fpforge {

Grid::Grid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps) {
  require(std::isfinite(t_end) && t_end > 0.0, "grid t_end must be positive and finite");
  require(n_steps >= 1, "grid needs at least one step");
}

GridFunction::GridFunction(Grid grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.size() * dim, 0.0) {
  require(dim >= 1, "grid function dimension must be positive");
}

GridFunction::GridFunction(Grid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  require(dim >= 1, "grid function dimension must be positive");
  require(values_.size() == grid_.size() * dim_, "value count does not match grid and dim");
  require(all_finite(), "grid function values must be finite");
}

GridFunction GridFunction::sample(Grid grid, std::size_t dim,
                                  const std::function<void(double, std::span<double>)>& fn) {
  GridFunction u(grid, dim);
  for (std::size_t i = 0; i < grid.size(); ++i) fn(grid.node(i), u.at(i));
  require(u.all_finite(), "sampled function is not finite");
  return u;
}

GridFunction GridFunction::sample(Grid grid, const std::function<double(double)>& fn) {
  return sample(grid, 1, [&](double t, std::span<double> out) { out[0] = fn(t); });
}

bool GridFunction::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void SpaceSpec::validate(const Grid& grid) const {
  require(vector_p >= 1.0, "vector_p must be in [1, inf]");
  if (time_norm == TimeNorm::Lp) {
    require(lp_exponent > 1.0 && std::isfinite(lp_exponent), "LP time exponent must lie in (1, inf)");
  }
  if (time_norm == TimeNorm::W1Inf) {
    require(grid.n_steps() >= 2, "W1INF norm needs at least two grid steps");
  }
}

double vector_norm(std::span<const double> x, double p) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (std::isinf(p) || m == 0.0) return m;
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

namespace {

void check_shape(const GridFunction& u, const GridFunction& v) {
  if (!u.same_shape(v)) throw Error(ErrorCode::GridMismatch, "grid functions differ in grid or dim");
}

}  // namespace

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.size(), grid.h());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double norm(const GridFunction& u, const SpaceSpec& s) {
  s.validate(u.grid());
  const std::size_t n = u.size();
  std::vector<double> pointwise(n);
  for (std::size_t i = 0; i < n; ++i) pointwise[i] = vector_norm(u.at(i), s.vector_p);
  const double peak = *std::max_element(pointwise.begin(), pointwise.end());

  switch (s.time_norm) {
    case TimeNorm::Sup:
      return peak;
    case TimeNorm::Lp: {
      if (peak == 0.0) return 0.0;
      // Scale by the peak so large exponents do not overflow.
      const auto w = trapezoid_weights(u.grid());
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::pow(pointwise[i] / peak, s.lp_exponent);
      return peak * std::pow(acc, 1.0 / s.lp_exponent);
    }
    case TimeNorm::W1Inf: {
      const double inv_h = 1.0 / u.grid().h();
      std::vector<double> diff(u.dim());
      double slope = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        auto a = u.at(i);
        auto b = u.at(i + 1);
        for (std::size_t k = 0; k < u.dim(); ++k) diff[k] = (b[k] - a[k]) * inv_h;
        slope = std::max(slope, vector_norm(diff, s.vector_p));
      }
      return peak + slope;
    }
  }
  return peak;
}

GridFunction axpy(double a, const GridFunction& u, const GridFunction& v) {
  check_shape(u, v);
  GridFunction out = v;
  auto& ov = out.values();
  const auto& uv = u.values();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] += a * uv[i];
  return out;
}

GridFunction scale(double a, const GridFunction& u) {
  GridFunction out = u;
  for (double& x : out.values()) x *= a;
  return out;
}

GridFunction operator+(const GridFunction& u, const GridFunction& v) { return axpy(1.0, u, v); }
GridFunction operator-(const GridFunction& u, const GridFunction& v) { return axpy(-1.0, v, u); }

GridFunction cumulative_integral(const GridFunction& w) {
  require(w.all_finite(), "integrand must be finite");
  GridFunction out(w.grid(), w.dim());
  const double half_h = 0.5 * w.grid().h();
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto prev = out.at(i - 1);
    auto cur = out.at(i);
    auto a = w.at(i - 1);
    auto b = w.at(i);
    for (std::size_t k = 0; k < w.dim(); ++k) cur[k] = prev[k] + half_h * (a[k] + b[k]);
  }
  return out;
}

void write_csv(std::ostream& os, const GridFunction& u) {
  os << "t";
  for (std::size_t k = 0; k < u.dim(); ++k) os << ",x" << (k + 1);
  os << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < u.size(); ++i) {
    os << u.grid().node(i);
    for (double v : u.at(i)) os << ',' << v;
    os << '\n';
  }
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t", 0) != 0) {
    throw Error(ErrorCode::InvalidArgument, "grid function CSV must start with a `t,...` header");
  }
  const auto dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  require(dim >= 1, "grid function CSV needs at least one value column");

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(row, cell, ',')) {
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad number in grid function CSV: " + cell);
      }
      if (col == 0) times.push_back(v);
      else values.push_back(v);
      ++col;
    }
    require(col == dim + 1, "grid function CSV row has the wrong column count");
  }
  require(times.size() >= 2, "grid function CSV needs at least two rows");
  Grid grid(times.back(), times.size() - 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::abs(times[i] - grid.node(i)) <= 1e-9 * grid.t_end(), "CSV grid is not uniform from 0");
  }
  return GridFunction(grid, dim, std::move(values));
}

}  // namespace fpforge
