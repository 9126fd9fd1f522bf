#include "dilatest/differences.hpp"

#include <cmath>

#include "dilatest/error.hpp"

namespace dilatest {

namespace {

std::vector<double> signed_binomials(int M) {
  std::vector<double> c(std::size_t(M) + 1);
  for (int j = 0; j <= M; ++j) c[std::size_t(j)] = ((j % 2) ? -1.0 : 1.0) * binomial(M, j);
  return c;
}

void check_order(int M) {
  if (M < 1) throw Error(ErrorKind::ConfigError, "difference order M must be >= 1");
}

std::vector<DisplacementNode> axis_nodes(const Grid& grid, double radius) {
  const double h = grid.spacing();
  const double rho = radius / h;
  const double m = std::round(rho);
  std::vector<DisplacementNode> out;
  if (std::abs(rho - m) < 1e-9 && m >= 1.0) {
    int intervals = 2 * int(m);
    int step = 1;
    if (intervals > 32 && intervals % 32 == 0) {
      step = intervals / 32;
      intervals = 32;
    }
    if (intervals <= 32) {
      for (int j = 0; j <= intervals; ++j) {
        DisplacementNode node;
        node.cells[0] = -int(m) + j * step;
        node.h[0] = node.cells[0] * h;
        node.weight = step * h * ((j == 0 || j == intervals) ? 0.5 : 1.0);
        node.aligned = true;
        out.push_back(node);
      }
      return out;
    }
  }
  const int nh = std::min(32, std::max(1, int(std::ceil(2.0 * rho - 1e-9))));
  const double dh = 2.0 * radius / nh;
  for (int j = 0; j < nh; ++j) {
    DisplacementNode node;
    node.h[0] = -radius + (j + 0.5) * dh;
    node.weight = dh;
    out.push_back(node);
  }
  return out;
}

Box window_box(const Grid& g, const Point& x, double r) {
  Box b{g.dim, x, x};
  for (int a = 0; a < g.dim; ++a) {
    b.lo[a] = x[a] - r;
    b.hi[a] = x[a] + r;
  }
  return b;
}

Box enlarged(const Box& b, double by) {
  Box e = b;
  for (int a = 0; a < b.dim; ++a) {
    e.lo[a] -= by;
    e.hi[a] += by;
  }
  return e;
}

void check_resolvable(const Grid& g, double r) {
  if (r < g.spacing() * (1.0 - 1e-12))
    throw Error(ErrorKind::ResolutionExceeded, "difference scale finer than the grid spacing");
}

/// Renormalized double average of |Delta_h^M f| over one x-box.
double averaged_difference(const GridFunction& f, int M, double radius, const Box& xbox) {
  double num = 0.0, den = 0.0;
  sweep_differences(f, M, radius, [&](double w, const PrefixTable& diff, const PrefixTable& valid) {
    num += w * diff.integral(xbox);
    den += w * valid.integral(xbox);
  });
  if (!(den > 0.0)) throw Error(ErrorKind::OutOfDomain, "no difference stencil stays inside the domain");
  return num / den;
}

}  // namespace

double binomial(int M, int j) {
  if (j < 0 || j > M) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c = c * (M - j + i) / i;
  return std::round(c);
}

double delta_m(const GridFunction& f, int M, const Point& h, const Point& x) {
  check_order(M);
  const auto coeff = signed_binomials(M);
  double acc = 0.0;
  for (int j = 0; j <= M; ++j) {
    const double t = M - j;
    acc += coeff[std::size_t(j)] * f.interpolate(Point{x[0] + t * h[0], x[1] + t * h[1]});
  }
  return acc;
}

std::vector<DisplacementNode> displacement_nodes(const Grid& grid, double radius) {
  const auto axis = axis_nodes(grid, radius);
  if (grid.dim == 1) return axis;
  std::vector<DisplacementNode> out;
  out.reserve(axis.size() * axis.size());
  for (const auto& b : axis)
    for (const auto& a : axis) {
      DisplacementNode node;
      node.h = Point{a.h[0], b.h[0]};
      node.cells = {a.cells[0], b.cells[0]};
      node.weight = a.weight * b.weight;
      node.aligned = a.aligned && b.aligned;
      out.push_back(node);
    }
  return out;
}

void sweep_differences(const GridFunction& f, int M, double radius,
                       const std::function<void(double, const PrefixTable&, const PrefixTable&)>& visit) {
  check_order(M);
  const Grid& g = f.grid();
  check_resolvable(g, radius);
  const auto coeff = signed_binomials(M);
  const int n = g.n;
  const double L = g.half_width;
  std::vector<double> diff(g.size()), valid(g.size());
  for (const auto& node : displacement_nodes(g, radius)) {
    for (int j = 0; j < (g.dim == 2 ? n : 1); ++j) {
      for (int i = 0; i < n; ++i) {
        const std::size_t idx = g.flat(i, j);
        double acc = 0.0;
        bool ok = true;
        if (node.aligned) {
          for (int t = 0; t <= M && ok; ++t) {
            const int ii = i + (M - t) * node.cells[0];
            const int jj = j + (M - t) * node.cells[1];
            if (ii < 0 || ii >= n || jj < 0 || (g.dim == 2 ? jj >= n : jj != 0)) {
              ok = false;
              break;
            }
            acc += coeff[std::size_t(t)] * f.at(ii, jj);
          }
        } else {
          const Point y = g.point(idx);
          for (int t = 0; t <= M && ok; ++t) {
            const Point z{y[0] + (M - t) * node.h[0], y[1] + (M - t) * node.h[1]};
            for (int a = 0; a < g.dim; ++a) ok = ok && z[a] >= -L && z[a] <= L;
            if (ok) acc += coeff[std::size_t(t)] * f.interpolate(z);
          }
        }
        diff[idx] = ok ? std::abs(acc) : 0.0;
        valid[idx] = ok ? 1.0 : 0.0;
      }
    }
    visit(node.weight, PrefixTable(g, diff), PrefixTable(g, valid));
  }
}

double delta_avg_cube(const GridFunction& f, const Box& cube, int M) {
  const Grid& g = f.grid();
  if (!Box::domain(g).contains(cube, 1e-12)) throw Error(ErrorKind::OutOfDomain, "cube leaves the sampled domain");
  const double side = cube.hi[0] - cube.lo[0];
  return std::pow(2.0, g.dim) * averaged_difference(f, M, side, cube);
}

double delta_avg_window(const GridFunction& f, const Point& x, int k, int M) {
  const Grid& g = f.grid();
  const double r = std::ldexp(1.0, -k);
  const Box w = window_box(g, x, r);
  if (!Box::domain(g).contains(w, 1e-12)) throw Error(ErrorKind::OutOfDomain, "window leaves the sampled domain");
  return std::pow(4.0, g.dim) * averaged_difference(f, M, r, w);
}

double delta_avg_expanded(const GridFunction& f, int k, const DyadicCube& cube, int M) {
  const Grid& g = f.grid();
  const Box e = expanded_cube(cube);
  if (!Box::domain(g).contains(e, 1e-12)) throw Error(ErrorKind::OutOfDomain, "expanded cube leaves the sampled domain");
  return std::pow(0.4, g.dim) * averaged_difference(f, M, std::ldexp(1.0, -k), e);
}

WindowField window_differences(const GridFunction& f, int k, int M) {
  const Grid& g = f.grid();
  const double r = std::ldexp(1.0, -k);
  const std::size_t size = g.size();
  std::vector<double> num(size, 0.0), den(size, 0.0);
  std::vector<Box> boxes(size);
  for (std::size_t idx = 0; idx < size; ++idx) boxes[idx] = window_box(g, g.point(idx), r);
  sweep_differences(f, M, r, [&](double w, const PrefixTable& diff, const PrefixTable& valid) {
    for (std::size_t idx = 0; idx < size; ++idx) {
      num[idx] += w * diff.integral(boxes[idx]);
      den[idx] += w * valid.integral(boxes[idx]);
    }
  });
  WindowField out;
  out.values.resize(size);
  out.near_boundary.resize(size);
  const double scale = std::pow(4.0, g.dim);
  const Box dom = Box::domain(g);
  for (std::size_t idx = 0; idx < size; ++idx) {
    out.values[idx] = den[idx] > 0.0 ? scale * num[idx] / den[idx] : 0.0;
    out.near_boundary[idx] = dom.contains(enlarged(boxes[idx], M * r), 1e-12) ? 0 : 1;
  }
  return out;
}

CubeDifferences cube_differences(const GridFunction& f, int k, int M, bool expanded) {
  const Grid& g = f.grid();
  const double r = std::ldexp(1.0, -k);
  CubeDifferences out;
  out.cubes = cubes_covering(g, Box::domain(g), k);
  const std::size_t count = out.cubes.size();
  std::vector<Box> boxes(count);
  for (std::size_t c = 0; c < count; ++c) boxes[c] = expanded ? expanded_cube(out.cubes[c]) : cube_box(out.cubes[c]);
  std::vector<double> num(count, 0.0), den(count, 0.0);
  sweep_differences(f, M, r, [&](double w, const PrefixTable& diff, const PrefixTable& valid) {
    for (std::size_t c = 0; c < count; ++c) {
      num[c] += w * diff.integral(boxes[c]);
      den[c] += w * valid.integral(boxes[c]);
    }
  });
  const double scale = expanded ? std::pow(0.4, g.dim) : std::pow(2.0, g.dim);
  const Box dom = Box::domain(g);
  out.values.resize(count);
  out.clipped.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    out.values[c] = den[c] > 0.0 ? scale * num[c] / den[c] : 0.0;
    out.clipped[c] = dom.contains(enlarged(boxes[c], M * r), 1e-12) ? 0 : 1;
  }
  return out;
}

}  // namespace dilatest
