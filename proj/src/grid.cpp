#include "dilatest/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dilatest/error.hpp"

namespace dilatest {

double Grid::cell_volume() const {
  const double h = spacing();
  return dim == 1 ? h : h * h;
}

Point Grid::point(std::size_t flat) const {
  const int i = int(flat % std::size_t(n));
  const int j = int(flat / std::size_t(n));
  return dim == 1 ? Point{center(i), 0.0} : Point{center(i), center(j)};
}

int Grid::finest_level() const {
  return int(std::floor(std::log2(1.0 / spacing()) + 1e-9));
}

int Grid::coarsest_level() const {
  return -int(std::floor(std::log2(half_width) + 1e-9));
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw Error(ErrorKind::ConfigError, "grid.dim must be 1 or 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorKind::ConfigError, "grid.L must be positive and finite");
  if (n < 2 || (n & (n - 1)) != 0) throw Error(ErrorKind::ConfigError, "grid.N must be a power of two >= 2");
}

double Box::measure() const {
  double m = 1.0;
  for (int a = 0; a < dim; ++a) m *= std::max(0.0, hi[a] - lo[a]);
  return m;
}

bool Box::empty() const {
  for (int a = 0; a < dim; ++a)
    if (!(hi[a] > lo[a])) return true;
  return false;
}

Box Box::intersect(const Box& other) const {
  Box r{dim, lo, hi};
  for (int a = 0; a < dim; ++a) {
    r.lo[a] = std::max(lo[a], other.lo[a]);
    r.hi[a] = std::min(hi[a], other.hi[a]);
  }
  return r;
}

bool Box::contains(const Box& other, double tol) const {
  for (int a = 0; a < dim; ++a)
    if (other.lo[a] < lo[a] - tol || other.hi[a] > hi[a] + tol) return false;
  return true;
}

bool Box::contains(const Point& x) const {
  for (int a = 0; a < dim; ++a)
    if (x[a] < lo[a] || x[a] >= hi[a]) return false;
  return true;
}

Box Box::domain(const Grid& g) {
  Box b{g.dim, {-g.half_width, -g.half_width}, {g.half_width, g.half_width}};
  if (g.dim == 1) b.lo[1] = b.hi[1] = 0.0;
  return b;
}

Box Box::cube(int dim, const Point& lo, double side) {
  Box b{dim, lo, lo};
  for (int a = 0; a < dim; ++a) b.hi[a] = lo[a] + side;
  return b;
}

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

Point DyadicCube::corner() const {
  Point c{0.0, 0.0};
  for (int a = 0; a < dim; ++a) c[a] = std::ldexp(double(index[a]), -level);
  return c;
}

GridFunction::GridFunction(Grid grid, std::vector<double> samples, std::optional<ClosedForm> closed_form)
    : grid_(grid), samples_(std::move(samples)), closed_form_(std::move(closed_form)) {
  grid_.validate();
  if (samples_.size() != grid_.size())
    throw Error(ErrorKind::ConfigError, "sample count does not match grid size");
}

GridFunction GridFunction::sample(const Grid& grid, ClosedForm closed_form) {
  grid.validate();
  std::vector<double> s(grid.size());
  for (std::size_t idx = 0; idx < s.size(); ++idx) s[idx] = closed_form.fn(grid.point(idx));
  return GridFunction(grid, std::move(s), std::move(closed_form));
}

GridFunction GridFunction::constant(const Grid& grid, double c) {
  return sample(grid, ClosedForm{"constant", [c](const Point&) { return c; }});
}

double GridFunction::interpolate(const Point& x) const {
  const double L = grid_.half_width;
  const double h = grid_.spacing();
  int i0[2] = {0, 0};
  double frac[2] = {0.0, 0.0};
  for (int a = 0; a < grid_.dim; ++a) {
    if (!(x[a] >= -L && x[a] <= L))
      throw Error(ErrorKind::OutOfDomain, "interpolation point outside [-L, L]^n");
    double u = (x[a] + L) / h - 0.5;
    u = std::clamp(u, 0.0, double(grid_.n - 1));
    int i = int(std::floor(u));
    if (i >= grid_.n - 1) i = grid_.n - 2;
    i0[a] = i;
    frac[a] = u - i;
  }
  if (grid_.dim == 1) return (1.0 - frac[0]) * at(i0[0]) + frac[0] * at(i0[0] + 1);
  const double v00 = at(i0[0], i0[1]);
  const double v10 = at(i0[0] + 1, i0[1]);
  const double v01 = at(i0[0], i0[1] + 1);
  const double v11 = at(i0[0] + 1, i0[1] + 1);
  return (1.0 - frac[1]) * ((1.0 - frac[0]) * v00 + frac[0] * v10) + frac[1] * ((1.0 - frac[0]) * v01 + frac[0] * v11);
}

double GridFunction::evaluate(const Point& x) const {
  if (closed_form_) return closed_form_->fn(x);
  return interpolate(x);
}

GridFunction GridFunction::resampled(const Grid& target) const {
  if (closed_form_) return sample(target, *closed_form_);
  target.validate();
  std::vector<double> s(target.size(), 0.0);
  const Box dom = Box::domain(grid_);
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    const Point x = target.point(idx);
    bool inside = true;
    for (int a = 0; a < target.dim; ++a) inside = inside && x[a] >= dom.lo[a] && x[a] <= dom.hi[a];
    if (inside) s[idx] = interpolate(x);
  }
  return GridFunction(target, std::move(s));
}

GridFunction GridFunction::map(const std::function<double(double)>& op, const std::string& tag_suffix) const {
  std::vector<double> s(samples_.size());
  std::transform(samples_.begin(), samples_.end(), s.begin(), op);
  std::optional<ClosedForm> cf;
  if (closed_form_) {
    auto inner = closed_form_->fn;
    cf = ClosedForm{closed_form_->tag + tag_suffix, [inner, op](const Point& x) { return op(inner(x)); }};
  }
  return GridFunction(grid_, std::move(s), std::move(cf));
}

double GridFunction::lp_norm(double p) const {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
  }
  long double acc = 0.0L;
  for (double v : samples_) acc += std::pow(std::abs(v), p);
  return std::pow(double(acc) * grid_.cell_volume(), 1.0 / p);
}

std::pair<int, int> cell_range(const Grid& g, double lo, double hi) {
  const double h = g.spacing();
  const double L = g.half_width;
  // centers c_i = -L + (i + 1/2) h lie in [lo, hi) iff i in [ceil(a), ceil(b)).
  const double a = (lo + L) / h - 0.5;
  const double b = (hi + L) / h - 0.5;
  auto snap = [](double v) {
    const double r = std::round(v);
    return std::abs(v - r) < 1e-9 ? r : std::ceil(v);
  };
  int i0 = int(std::clamp(snap(a), 0.0, double(g.n)));
  int i1 = int(std::clamp(snap(b), 0.0, double(g.n)));
  return {i0, std::max(i0, i1)};
}

PrefixTable::PrefixTable(const Grid& grid, std::span<const double> values) : grid_(grid) {
  if (values.size() != grid.size()) throw Error(ErrorKind::ConfigError, "prefix table size mismatch");
  const int n = grid.n;
  const double vol = grid.cell_volume();
  if (grid.dim == 1) {
    prefix_.assign(std::size_t(n) + 1, 0.0);
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
      acc += values[std::size_t(i)];
      prefix_[std::size_t(i) + 1] = double(acc * vol);
    }
    return;
  }
  const std::size_t stride = std::size_t(n) + 1;
  prefix_.assign(stride * stride, 0.0);
  std::vector<long double> column(std::size_t(n) + 1, 0.0L);
  for (int j = 0; j < n; ++j) {
    long double row = 0.0L;
    for (int i = 0; i < n; ++i) {
      row += values[grid.flat(i, j)];
      column[std::size_t(i) + 1] += row;
      prefix_[std::size_t(i) + 1 + stride * std::size_t(j + 1)] = double(column[std::size_t(i) + 1] * vol);
    }
  }
}

double PrefixTable::cumulative(double u, double w) const {
  const int n = grid_.n;
  u = std::clamp(u, 0.0, double(n));
  int i = std::min(int(std::floor(u)), n - 1);
  const double a = u - i;
  if (grid_.dim == 1) return corner(i, 0) + a * (corner(i + 1, 0) - corner(i, 0));
  w = std::clamp(w, 0.0, double(n));
  int j = std::min(int(std::floor(w)), n - 1);
  const double b = w - j;
  const double p00 = corner(i, j), p10 = corner(i + 1, j), p01 = corner(i, j + 1), p11 = corner(i + 1, j + 1);
  return p00 + a * (p10 - p00) + b * (p01 - p00) + a * b * (p11 - p10 - p01 + p00);
}

double PrefixTable::integral(const Box& box) const {
  const Box b = box.intersect(Box::domain(grid_));
  if (b.empty()) return 0.0;
  const double L = grid_.half_width;
  const double h = grid_.spacing();
  const double u0 = (b.lo[0] + L) / h, u1 = (b.hi[0] + L) / h;
  if (grid_.dim == 1) return cumulative(u1, 0.0) - cumulative(u0, 0.0);
  const double w0 = (b.lo[1] + L) / h, w1 = (b.hi[1] + L) / h;
  return cumulative(u1, w1) - cumulative(u0, w1) - cumulative(u1, w0) + cumulative(u0, w0);
}

double PrefixTable::integral_cells(int i0, int i1, int j0, int j1) const {
  if (grid_.dim == 1) return corner(i1, 0) - corner(i0, 0);
  return corner(i1, j1) - corner(i0, j1) - corner(i1, j0) + corner(i0, j0);
}

}  // namespace dilatest
