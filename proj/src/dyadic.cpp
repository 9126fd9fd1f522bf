#include "dilatest/dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "dilatest/error.hpp"

namespace dilatest {

Box cube_box(const DyadicCube& c) { return Box::cube(c.dim, c.corner(), c.side()); }

Box expanded_cube(const DyadicCube& c) {
  Box b{c.dim, {0.0, 0.0}, {0.0, 0.0}};
  for (int a = 0; a < c.dim; ++a) {
    b.lo[a] = std::ldexp(double(c.index[a] - 2), -c.level);
    b.hi[a] = std::ldexp(double(c.index[a] + 3), -c.level);
  }
  return b;
}

namespace {

bool holds_full_cell(const Grid& g, const Box& b) {
  const double h = g.spacing();
  for (int a = 0; a < g.dim; ++a) {
    const double first = std::ceil((b.lo[a] + g.half_width) / h - 1e-9);
    const double last = std::floor((b.hi[a] + g.half_width) / h + 1e-9) - 1.0;
    if (last < first) return false;
  }
  return true;
}

Box checked_intersection(const GridFunction& f, const Box& b) {
  const Box clipped = b.intersect(Box::domain(f.grid()));
  if (clipped.empty() || !holds_full_cell(f.grid(), clipped))
    throw Error(ErrorKind::EmptyIntersection, "box meets the domain in no full grid cell");
  return clipped;
}

}  // namespace

double box_average(const GridFunction& f, const Box& b) {
  return box_lp_average(f, b, 1.0);
}

namespace {

/// Cells meeting [lo, hi) in positive length.
std::pair<int, int> overlapping_cells(const Grid& g, double lo, double hi) {
  const double h = g.spacing();
  const int a = int(std::floor((lo + g.half_width) / h + 1e-12));
  const int b = int(std::ceil((hi + g.half_width) / h - 1e-12));
  return {std::clamp(a, 0, g.n), std::clamp(b, 0, g.n)};
}

}  // namespace

double box_lp_average(const GridFunction& f, const Box& b, double p) {
  if (!(p > 0.0)) throw Error(ErrorKind::InvalidExponent, "box_lp_average needs p > 0");
  const Box clipped = checked_intersection(f, b);
  const Grid& g = f.grid();
  if (std::isinf(p)) {
    const auto [i0, i1] = overlapping_cells(g, clipped.lo[0], clipped.hi[0]);
    const auto [j0, j1] = g.dim == 2 ? overlapping_cells(g, clipped.lo[1], clipped.hi[1]) : std::pair<int, int>{0, 1};
    double m = 0.0;
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) m = std::max(m, std::abs(f.at(i, j)));
    return m;
  }
  std::vector<double> powered(f.samples().size());
  std::transform(f.samples().begin(), f.samples().end(), powered.begin(),
                 [p](double v) { return std::pow(std::abs(v), p); });
  const PrefixTable table(g, powered);
  const double mean = table.integral(clipped) / clipped.measure();
  return p == 1.0 ? mean : std::pow(mean, 1.0 / p);
}

std::vector<DyadicCube> cubes_covering(const Grid& grid, const Box& b, int k) {
  const double side = std::ldexp(1.0, -k);
  if (side < grid.spacing() * (1.0 - 1e-12))
    throw Error(ErrorKind::ResolutionExceeded, "dyadic level " + std::to_string(k) + " is finer than the grid spacing");
  std::int64_t lo[2] = {0, 0}, hi[2] = {0, 0};
  for (int a = 0; a < b.dim; ++a) {
    lo[a] = std::int64_t(std::floor(b.lo[a] / side));
    hi[a] = std::int64_t(std::ceil(b.hi[a] / side)) - 1;
  }
  std::vector<DyadicCube> out;
  if (b.empty()) return out;
  for (std::int64_t mj = lo[1]; mj <= hi[1]; ++mj)
    for (std::int64_t mi = lo[0]; mi <= hi[0]; ++mi) out.push_back(DyadicCube{k, {mi, b.dim == 2 ? mj : 0}, b.dim});
  return out;
}

std::vector<ScannedCube> scan_family(const Grid& grid, int level_min, int level_max) {
  std::vector<ScannedCube> out;
  const Box dom = Box::domain(grid);
  const double L = grid.half_width;
  const int n_shift = grid.dim == 1 ? 2 : 4;
  for (int k = level_min; k <= level_max; ++k) {
    const double side = std::ldexp(1.0, -k);
    for (int s = 0; s < n_shift; ++s) {
      const Point shift{(s & 1) ? 1.0 / 3.0 : 0.0, (s & 2) ? 1.0 / 3.0 : 0.0};
      std::int64_t lo[2] = {0, 0}, hi[2] = {0, 0};
      for (int a = 0; a < grid.dim; ++a) {
        lo[a] = std::int64_t(std::floor(-L / side - shift[a]));
        hi[a] = std::int64_t(std::ceil(L / side - shift[a])) - 1;
      }
      for (std::int64_t mj = lo[1]; mj <= hi[1]; ++mj) {
        for (std::int64_t mi = lo[0]; mi <= hi[0]; ++mi) {
          ScannedCube sc;
          sc.cube = DyadicCube{k, {mi, grid.dim == 2 ? mj : 0}, grid.dim};
          sc.shift = shift;
          Point corner{(double(mi) + shift[0]) * side, (double(mj) + shift[1]) * side};
          if (grid.dim == 1) corner[1] = 0.0;
          const Box full = Box::cube(grid.dim, corner, side);
          sc.box = full.intersect(dom);
          if (sc.box.empty()) continue;
          sc.clipped = !dom.contains(full, 1e-12);
          out.push_back(sc);
        }
      }
    }
  }
  return out;
}

}  // namespace dilatest
