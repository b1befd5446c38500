#pragma once

// Discretized function spaces over a uniform time grid on [0, T].
//
// A GridFunction stores u(t_i) for every node t_i = i * T / n_steps as one row
// of a row-major (n_steps + 1) x d matrix. Norms combine a pointwise R^d
// p-norm with a time norm (sup, trapezoid L^p, or discrete W^{1,inf}).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace fpforge {

class Grid {
 public:
  Grid(double t_end, std::size_t n_steps);

  [[nodiscard]] double t_end() const noexcept { return t_end_; }
  [[nodiscard]] std::size_t n_steps() const noexcept { return n_steps_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_steps_ + 1; }
  [[nodiscard]] double h() const noexcept { return t_end_ / static_cast<double>(n_steps_); }
  [[nodiscard]] double node(std::size_t i) const noexcept {
    return t_end_ * static_cast<double>(i) / static_cast<double>(n_steps_);
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double t_end_;
  std::size_t n_steps_;
};

class GridFunction {
 public:
  /// Zero function.
  GridFunction(Grid grid, std::size_t dim);
  GridFunction(Grid grid, std::size_t dim, std::vector<double> values);

  /// Samples fn(t, out) at every node; out has length dim.
  static GridFunction sample(Grid grid, std::size_t dim,
                             const std::function<void(double, std::span<double>)>& fn);
  /// Scalar convenience.
  static GridFunction sample(Grid grid, const std::function<double(double)>& fn);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }

  [[nodiscard]] std::span<const double> at(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  [[nodiscard]] std::span<double> at(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t k = 0) const {
    return values_[i * dim_ + k];
  }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

  [[nodiscard]] bool all_finite() const noexcept;
  [[nodiscard]] bool same_shape(const GridFunction& other) const noexcept {
    return grid_ == other.grid_ && dim_ == other.dim_;
  }

 private:
  Grid grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

enum class TimeNorm { Sup, Lp, W1Inf };

struct SpaceSpec {
  TimeNorm time_norm = TimeNorm::Sup;
  /// Exponent of the pointwise R^d norm; infinity selects the max norm.
  double vector_p = 2.0;
  /// Time exponent, only meaningful for TimeNorm::Lp.
  double lp_exponent = 2.0;

  static SpaceSpec sup(double vector_p = 2.0) { return {TimeNorm::Sup, vector_p, 2.0}; }
  static SpaceSpec lp(double p, double vector_p = 2.0) { return {TimeNorm::Lp, vector_p, p}; }
  static SpaceSpec w1inf(double vector_p = 2.0) { return {TimeNorm::W1Inf, vector_p, 2.0}; }

  /// Throws InvalidArgument when the spec is malformed or unusable on grid.
  void validate(const Grid& grid) const;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

[[nodiscard]] double vector_norm(std::span<const double> x, double p);

[[nodiscard]] double norm(const GridFunction& u, const SpaceSpec& s);

/// a * u + v, nodewise.
[[nodiscard]] GridFunction axpy(double a, const GridFunction& u, const GridFunction& v);
[[nodiscard]] GridFunction scale(double a, const GridFunction& u);
[[nodiscard]] GridFunction operator+(const GridFunction& u, const GridFunction& v);
[[nodiscard]] GridFunction operator-(const GridFunction& u, const GridFunction& v);

/// Composite trapezoid running integral; output(0) = 0.
[[nodiscard]] GridFunction cumulative_integral(const GridFunction& w);

/// Trapezoid weights on the grid (h/2 at the ends, h inside).
[[nodiscard]] std::vector<double> trapezoid_weights(const Grid& grid);

/// CSV with header `t,x1,...,xd`, 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& u);
/// Inverse of write_csv; the grid is recovered from the t column.
[[nodiscard]] GridFunction read_csv(std::istream& is);

}  // namespace fpforge
