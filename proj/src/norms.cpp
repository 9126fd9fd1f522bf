#include "dilatest/norms.hpp"

#include <cmath>
#include <string>

#include "dilatest/differences.hpp"
#include "dilatest/dyadic.hpp"
#include "dilatest/error.hpp"

namespace dilatest {

namespace {

std::vector<double> abs_pow(std::span<const double> v, double e) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(std::abs(v[i]), e);
  return out;
}

WeightSequence on_grid(const WeightSequence& t, const Grid& g) { return t.grid() == g ? t : t.resampled(g); }

void check_levels(const WeightSequence& t, int K) {
  if (t.k_max() < K)
    throw Error(ErrorKind::MissingLevels, "weight sequence has levels up to " + std::to_string(t.k_max()) +
                                              ", the norm needs " + std::to_string(K));
}

/// Position of the level-k cube owning each cell in the cubes_covering order.
std::vector<std::size_t> ownership(const Grid& g, const std::vector<DyadicCube>& cubes, int k) {
  const auto m0 = cubes.front().index;
  std::size_t row = 0;
  while (row < cubes.size() && cubes[row].index[1] == m0[1]) ++row;
  const double side = std::ldexp(1.0, -k);
  std::vector<std::size_t> out(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const Point x = g.point(idx);
    const auto a = std::int64_t(std::floor(x[0] / side)) - m0[0];
    const auto b = g.dim == 2 ? std::int64_t(std::floor(x[1] / side)) - m0[1] : 0;
    out[idx] = std::size_t(a) + row * std::size_t(b);
  }
  return out;
}

void finish(NormReport& r, double q, double boundary_mass, double total_mass) {
  const int K = r.k_max;
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) sum += std::pow(r.level_terms[std::size_t(k)], q);
  r.tail_fraction = (K >= 1 && sum > 0.0) ? std::pow(r.level_terms[std::size_t(K)], q) / sum : 0.0;
  r.boundary_fraction = total_mass > 0.0 ? boundary_mass / total_mass : 0.0;
  r.unreliable = r.boundary_fraction > 0.2;
  r.value = r.level_part + r.zero_order;
}

}  // namespace

LTildeReport ltilde(const GridFunction& f, const GridFunction& t0, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidExponent, "p must be >= 1");
  const Grid& g = f.grid();
  const GridFunction w = t0.grid() == g ? t0 : t0.resampled(g);
  const PrefixTable table(g, abs_pow(f.samples(), 1.0));
  const Box dom = Box::domain(g);
  long double all = 0.0, inner = 0.0, clipped = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const Point x = g.point(idx);
    Box win{g.dim, x, x};
    for (int a = 0; a < g.dim; ++a) {
      win.lo[a] -= 1.0;
      win.hi[a] += 1.0;
    }
    const double term = std::pow(w[idx] * table.integral(win), p);
    all += term;
    if (dom.contains(win, 1e-12))
      inner += term;
    else
      clipped += term;
  }
  const double vol = g.cell_volume();
  LTildeReport r;
  r.value = std::pow(double(all) * vol, 1.0 / p);
  r.interior = std::pow(double(inner) * vol, 1.0 / p);
  r.clipped_fraction = all > 0 ? double(clipped / all) : 0.0;
  return r;
}

double ltilde_norm(const GridFunction& f, const GridFunction& t0, double p) { return ltilde(f, t0, p).value; }

int default_diff_k_max(const Grid& grid) {
  int K = 0;
  while (std::ldexp(1.0, -(K + 1)) >= 4.0 * grid.spacing() * (1.0 - 1e-12)) ++K;
  return K;
}

int resolve_k_max(const SpaceParams& sp, const Grid& grid) {
  if (sp.k_max < 0) return default_diff_k_max(grid);
  if (sp.k_max > default_diff_k_max(grid))
    throw Error(ErrorKind::ResolutionExceeded, "K_max = " + std::to_string(sp.k_max) + " needs 2^{-K_max} >= 4 spacings (limit " +
                                                   std::to_string(default_diff_k_max(grid)) + ")");
  return sp.k_max;
}

NormReport diff_norm_report(const GridFunction& f, const WeightSequence& t_in, const SpaceParams& sp) {
  sp.validate();
  const Grid& g = f.grid();
  const int K = resolve_k_max(sp, g);
  check_levels(t_in, K);
  const WeightSequence t = on_grid(t_in, g);
  const double vol = g.cell_volume();
  const std::size_t size = g.size();

  NormReport r;
  r.k_max = K;
  r.level_terms.assign(std::size_t(K) + 1, 0.0);
  r.zero_order = ltilde_norm(f, t.level(0), sp.p);

  std::vector<double> inner(sp.kind == SpaceKind::F ? size : 0, 0.0);
  std::vector<std::uint8_t> touched(size, 0);
  double b_sum = 0.0, boundary_mass = 0.0, total_mass = 0.0;
  for (int k = 1; k <= K; ++k) {
    const WindowField w = window_differences(f, k, sp.M);
    const auto& tk = t.level(k);
    long double acc = 0.0;
    for (std::size_t idx = 0; idx < size; ++idx) {
      const double v = tk[idx] * w.values[idx];
      const double vp = std::pow(v, sp.p);
      acc += vp;
      total_mass += vp;
      if (w.near_boundary[idx]) boundary_mass += vp;
      if (sp.kind == SpaceKind::F) {
        inner[idx] += std::pow(v, sp.q);
        touched[idx] |= w.near_boundary[idx];
      }
    }
    const double level_norm = std::pow(double(acc) * vol, 1.0 / sp.p);
    r.level_terms[std::size_t(k)] = level_norm;
    b_sum += std::pow(level_norm, sp.q);
  }
  if (sp.kind == SpaceKind::B) {
    r.level_part = std::pow(b_sum, 1.0 / sp.q);
  } else {
    long double acc = 0.0, edge = 0.0;
    for (std::size_t idx = 0; idx < size; ++idx) {
      const double v = std::pow(inner[idx], sp.p / sp.q);
      acc += v;
      if (touched[idx]) edge += v;
    }
    r.level_part = std::pow(double(acc) * vol, 1.0 / sp.p);
    boundary_mass = double(edge);
    total_mass = double(acc);
  }
  finish(r, sp.kind == SpaceKind::B ? sp.q : sp.p, boundary_mass, total_mass);
  return r;
}

double diff_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp) {
  return diff_norm_report(f, t, sp).value;
}

NormReport star_norm_report(const GridFunction& f, const WeightSequence& t_in, const SpaceParams& sp) {
  sp.validate();
  const Grid& g = f.grid();
  const int K = resolve_k_max(sp, g);
  check_levels(t_in, K);
  const WeightSequence t = on_grid(t_in, g);
  const Box dom = Box::domain(g);
  const double n = g.dim;

  NormReport r;
  r.k_max = K;
  r.level_terms.assign(std::size_t(K) + 1, 0.0);

  {
    const PrefixTable f_abs(g, abs_pow(f.samples(), 1.0));
    const PrefixTable w0(g, abs_pow(t.level(0).samples(), sp.p));
    long double acc = 0.0;
    for (const auto& c : cubes_covering(g, dom, 0)) {
      const Box b = cube_box(c);
      acc += w0.integral(b) * std::pow(f_abs.integral(b), sp.p);
    }
    r.zero_order = std::pow(double(acc), 1.0 / sp.p);
  }

  const bool F = sp.kind == SpaceKind::F;
  std::vector<double> inner(F ? g.size() : 0, 0.0);
  std::vector<std::uint8_t> touched(F ? g.size() : 0, 0);
  double b_sum = 0.0, boundary_mass = 0.0, total_mass = 0.0;
  for (int k = 1; k <= K; ++k) {
    const CubeDifferences cd = cube_differences(f, k, sp.M, F);
    const PrefixTable wk(g, abs_pow(t.level(k).samples(), sp.p));
    std::vector<double> tkm(cd.cubes.size());
    long double acc = 0.0;
    for (std::size_t c = 0; c < cd.cubes.size(); ++c) {
      tkm[c] = std::pow(wk.integral(cube_box(cd.cubes[c])), 1.0 / sp.p);
      const double vp = std::pow(tkm[c] * cd.values[c], sp.p);
      acc += vp;
      total_mass += vp;
      if (cd.clipped[c]) boundary_mass += vp;
    }
    r.level_terms[std::size_t(k)] = std::pow(double(acc), 1.0 / sp.p);
    b_sum += std::pow(r.level_terms[std::size_t(k)], sp.q);
    if (F) {
      const auto owner = ownership(g, cd.cubes, k);
      const double scale = std::exp2(k * n * sp.q / sp.p);
      for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const std::size_t c = owner[idx];
        inner[idx] += scale * std::pow(tkm[c] * cd.values[c], sp.q);
        touched[idx] |= cd.clipped[c];
      }
    }
  }
  if (!F) {
    r.level_part = std::pow(b_sum, 1.0 / sp.q);
  } else {
    long double acc = 0.0, edge = 0.0;
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const double v = std::pow(inner[idx], sp.p / sp.q);
      acc += v;
      if (touched[idx]) edge += v;
    }
    r.level_part = std::pow(double(acc) * g.cell_volume(), 1.0 / sp.p);
    boundary_mass = double(edge);
    total_mass = double(acc);
  }
  finish(r, F ? sp.p : sp.q, boundary_mass, total_mass);
  return r;
}

double star_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp) {
  return star_norm_report(f, t, sp).value;
}

}  // namespace dilatest
