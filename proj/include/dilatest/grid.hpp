#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dilatest {

/// A point of R^n, n in {1,2}. Unused trailing coordinates are zero.
using Point = std::array<double, 2>;

/// Cell-centered uniform grid over [-L, L]^n with N cells per axis.
///
/// Sample j sits at -L + (j + 1/2) * spacing, so no sample ever lands on a
/// coordinate hyperplane. Flat storage is axis-0 fastest.
struct Grid {
  int dim = 1;
  double half_width = 8.0;
  int n = 256;

  double spacing() const { return 2.0 * half_width / n; }
  std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n); }
  double center(int i) const { return -half_width + (i + 0.5) * spacing(); }
  double cell_volume() const;
  Point point(std::size_t flat) const;
  std::size_t flat(int i, int j = 0) const { return std::size_t(i) + std::size_t(n) * std::size_t(j); }

  /// Finest dyadic level whose cubes still hold at least one full cell.
  int finest_level() const;
  /// Coarsest level scanned by cube families: side 2^{floor(log2 L)}.
  int coarsest_level() const;

  Grid refined(int factor) const { return Grid{dim, half_width, n * factor}; }

  /// Throws ConfigError unless dim in {1,2}, L > 0 and N a power of two >= 2.
  void validate() const;

  bool operator==(const Grid&) const = default;
};

/// Axis-aligned box; per-axis interval [lo, hi).
struct Box {
  int dim = 1;
  Point lo{0.0, 0.0};
  Point hi{0.0, 0.0};

  double measure() const;
  bool empty() const;
  Box intersect(const Box& other) const;
  bool contains(const Box& other, double tol = 0.0) const;
  bool contains(const Point& x) const;

  static Box domain(const Grid& g);
  static Box cube(int dim, const Point& lo, double side);
};

/// Q_{k,m} = 2^{-k}([0,1)^n + m).
struct DyadicCube {
  int level = 0;
  std::array<std::int64_t, 2> index{0, 0};
  int dim = 1;

  double side() const;
  Point corner() const;

  bool operator==(const DyadicCube&) const = default;
};

/// Closed-form evaluator carried alongside samples so refinement studies can
/// resample exactly instead of interpolating.
struct ClosedForm {
  std::string tag;
  std::function<double(const Point&)> fn;
};

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Grid grid, std::vector<double> samples, std::optional<ClosedForm> closed_form = std::nullopt);

  static GridFunction sample(const Grid& grid, ClosedForm closed_form);
  static GridFunction constant(const Grid& grid, double c);

  const Grid& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::span<double> mutable_samples() { return samples_; }
  double operator[](std::size_t flat) const { return samples_[flat]; }
  double at(int i, int j = 0) const { return samples_[grid_.flat(i, j)]; }

  bool has_closed_form() const { return closed_form_.has_value(); }
  const std::optional<ClosedForm>& closed_form() const { return closed_form_; }

  /// Multilinear interpolation between cell centers, constant extension in
  /// the outer half cells. Throws OutOfDomain outside [-L, L]^n.
  double interpolate(const Point& x) const;

  /// Closed form when available, otherwise interpolation.
  double evaluate(const Point& x) const;

  /// Same function on another grid: closed form when available, otherwise
  /// interpolation (points outside this domain read as zero).
  GridFunction resampled(const Grid& target) const;

  /// Pointwise transform of the samples; the closed form (if any) is composed.
  GridFunction map(const std::function<double(double)>& op, const std::string& tag_suffix = "") const;

  /// L_p norm over the grid domain by midpoint quadrature.
  double lp_norm(double p) const;
  double l1_norm() const { return lp_norm(1.0); }

 private:
  Grid grid_;
  std::vector<double> samples_;
  std::optional<ClosedForm> closed_form_;
};

/// Cells whose centers lie in [lo, hi) along one axis, as a half-open index
/// range clamped to [0, N).
std::pair<int, int> cell_range(const Grid& g, double lo, double hi);

/// Exact integrals of the piecewise-constant interpolant of a sampled field
/// over arbitrary boxes (clipped to the grid domain), in O(1) per query.
///
/// The cumulative function is the multilinear interpolant of corner prefix
/// sums, which is exact for fields constant on cells.
class PrefixTable {
 public:
  PrefixTable() = default;
  PrefixTable(const Grid& grid, std::span<const double> values);

  const Grid& grid() const { return grid_; }
  double integral(const Box& box) const;
  /// Sum over the half-open cell rectangle [i0,i1) x [j0,j1), times the cell volume.
  double integral_cells(int i0, int i1, int j0 = 0, int j1 = 1) const;

 private:
  double cumulative(double u, double w) const;
  double corner(int i, int j) const { return prefix_[std::size_t(i) + std::size_t(grid_.n + 1) * std::size_t(j)]; }

  Grid grid_;
  std::vector<double> prefix_;
};

}  // namespace dilatest
