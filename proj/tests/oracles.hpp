#pragma once

// Brute-force reference implementations: plain loops over cells, no prefix
// tables, no FFT. Slow but independent of the library kernels.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dilatest/dilation.hpp"
#include "dilatest/grid.hpp"
#include "dilatest/lp_fourier.hpp"
#include "dilatest/space.hpp"
#include "dilatest/weights.hpp"

namespace oracle {

using dilatest::Grid;
using dilatest::GridFunction;

/// Cell-sum of |f| over cells whose centers fall in [lo, hi), 1D.
inline double cell_sum(const GridFunction& f, double lo, double hi) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.center(i);
    if (x >= lo && x < hi) acc += std::abs(f.at(i));
  }
  return acc * g.spacing();
}

/// Window difference average at cell i (1D, aligned radius of m cells),
/// dropping stencils that leave the grid and renormalizing.
inline double window_delta(const GridFunction& f, int i, int m, int M) {
  const Grid& g = f.grid();
  const int intervals = 2 * m;
  const int step = intervals > 32 ? intervals / 32 : 1;
  const int nodes = intervals / step;
  double num = 0.0, den = 0.0;
  for (int a = 0; a <= nodes; ++a) {
    const int hc = -m + a * step;
    const double wh = (a == 0 || a == nodes) ? 0.5 : 1.0;
    // y ranges over the window (x - r, x + r): cells i-m+1 .. i+m-1 fully, i-m and i+m half.
    for (int y = i - m; y <= i + m; ++y) {
      if (y < 0 || y >= g.n) continue;
      const double wy = (y == i - m || y == i + m) ? 0.5 : 1.0;
      bool ok = true;
      double d = 0.0;
      for (int j = 0; j <= M; ++j) {
        const int idx = y + (M - j) * hc;
        if (idx < 0 || idx >= g.n) {
          ok = false;
          break;
        }
        double c = 1.0;
        for (int t = 1; t <= j; ++t) c = c * (M - j + t) / t;
        d += ((j % 2) ? -c : c) * f.at(idx);
      }
      if (!ok) continue;
      num += wh * wy * std::abs(d);
      den += wh * wy;
    }
  }
  return 4.0 * num / den;
}

/// B / F difference norm with a per-level scalar weight 2^{ks} and constant t0 = 1, 1D.
inline double diff_norm(const GridFunction& f, double s, const dilatest::SpaceParams& sp, int K) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  std::vector<std::vector<double>> w(std::size_t(K) + 1, std::vector<double>(std::size_t(g.n)));
  for (int k = 1; k <= K; ++k) {
    const int m = int(std::lround(std::ldexp(1.0, -k) / h));
    for (int i = 0; i < g.n; ++i) w[std::size_t(k)][std::size_t(i)] = std::exp2(k * s) * window_delta(f, i, m, sp.M);
  }
  double level = 0.0;
  if (sp.kind == dilatest::SpaceKind::B) {
    for (int k = 1; k <= K; ++k) {
      double acc = 0.0;
      for (double v : w[std::size_t(k)]) acc += std::pow(v, sp.p) * h;
      level += std::pow(acc, sp.q / sp.p);
    }
    level = std::pow(level, 1.0 / sp.q);
  } else {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
      double inner = 0.0;
      for (int k = 1; k <= K; ++k) inner += std::pow(w[std::size_t(k)][std::size_t(i)], sp.q);
      acc += std::pow(inner, sp.p / sp.q) * h;
    }
    level = std::pow(acc, 1.0 / sp.p);
  }
  double lt = 0.0;
  const int unit = int(std::lround(1.0 / h));
  for (int i = 0; i < g.n; ++i) {
    double acc = 0.0;
    for (int y = i - unit; y <= i + unit; ++y)
      if (y >= 0 && y < g.n) acc += ((y == i - unit || y == i + unit) ? 0.5 : 1.0) * std::abs(f.at(y));
    lt += std::pow(acc * h, sp.p) * h;
  }
  return level + std::pow(lt, 1.0 / sp.p);
}

/// Starred B norm (plain cubes) with weight 2^{ks}, 1D, cubes aligned to the grid.
inline double star_norm_b(const GridFunction& f, double s, const dilatest::SpaceParams& sp, int K) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  const double L = g.half_width;
  double zero = 0.0;
  for (double a = -L; a < L; a += 1.0) zero += std::pow(cell_sum(f, a, a + 1.0), sp.p);
  double level = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double side = std::ldexp(1.0, -k);
    const int m = int(std::lround(side / h));
    const int intervals = 2 * m;
    const int step = intervals > 32 ? intervals / 32 : 1;
    const int nodes = intervals / step;
    double acc = 0.0;
    for (int c0 = 0; c0 < g.n; c0 += m) {
      double num = 0.0, den = 0.0;
      for (int a = 0; a <= nodes; ++a) {
        const int hc = -m + a * step;
        const double wh = (a == 0 || a == nodes) ? 0.5 : 1.0;
        for (int y = c0; y < c0 + m; ++y) {
          bool ok = true;
          double d = 0.0;
          for (int j = 0; j <= sp.M; ++j) {
            const int idx = y + (sp.M - j) * hc;
            if (idx < 0 || idx >= g.n) {
              ok = false;
              break;
            }
            double c = 1.0;
            for (int t = 1; t <= j; ++t) c = c * (sp.M - j + t) / t;
            d += ((j % 2) ? -c : c) * f.at(idx);
          }
          if (!ok) continue;
          num += wh * std::abs(d);
          den += wh;
        }
      }
      const double delta = den > 0 ? 2.0 * num / den : 0.0;
      const double tkm = std::exp2(k * s) * std::sqrt(side);  // (int_Q 2^{2ks})^{1/2}, valid for p = 2
      acc += std::pow(tkm * delta, sp.p);
    }
    level += std::pow(acc, sp.q / sp.p);
  }
  return std::pow(level, 1.0 / sp.q) + std::pow(zero, 1.0 / sp.p);
}

/// Naive O(N^2) DFT.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& in, bool inverse) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += in[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * double(k * j % n) / double(n));
    out[k] = acc;
  }
  return out;
}

/// Fourier B/F norm with 2^{ks} via naive DFT, 1D.
inline double fourier_norm(const GridFunction& f, double s, const dilatest::SpaceParams& sp, int K) {
  const Grid& g = f.grid();
  std::vector<std::complex<double>> in(std::size_t(g.n));
  for (int i = 0; i < g.n; ++i) in[std::size_t(i)] = f.at(i);
  const auto spec = naive_dft(in, false);
  const auto freq = dilatest::dft_frequencies(g);
  std::vector<std::vector<double>> pieces;
  for (int k = 0; k <= K; ++k) {
    std::vector<std::complex<double>> b(spec.size());
    for (std::size_t m = 0; m < b.size(); ++m) {
      const double r = std::abs(freq[m]);
      const double phi = k == 0 ? dilatest::phi0_profile(r)
                                : dilatest::phi0_profile(std::ldexp(r, -k)) - dilatest::phi0_profile(std::ldexp(r, 1 - k));
      b[m] = spec[m] * phi;
    }
    const auto back = naive_dft(b, true);
    std::vector<double> re(back.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = std::exp2(k * s) * back[i].real() / double(g.n);
    pieces.push_back(re);
  }
  const double h = g.spacing();
  if (sp.kind == dilatest::SpaceKind::B) {
    double total = 0.0;
    for (const auto& pc : pieces) {
      double acc = 0.0;
      for (double v : pc) acc += std::pow(std::abs(v), sp.p) * h;
      total += std::pow(acc, sp.q / sp.p);
    }
    return std::pow(total, 1.0 / sp.q);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces.front().size(); ++i) {
    double inner = 0.0;
    for (const auto& pc : pieces) inner += std::pow(std::abs(pc[i]), sp.q);
    acc += std::pow(inner, sp.p / sp.q) * h;
  }
  return std::pow(acc, 1.0 / sp.p);
}

/// Centered dyadic-side maximal function by direct cell sums over every candidate cube, 1D.
inline std::vector<double> maximal(const GridFunction& f) {
  const Grid& g = f.grid();
  const double h = g.spacing();
  std::vector<double> out(std::size_t(g.n), 0.0);
  for (int x = 0; x < g.n; ++x) {
    for (int j = 0; (1 << j) <= g.n; ++j) {
      const double half = 0.5 * std::ldexp(h, j);
      const int r = j == 0 ? 0 : 1 << (j - 1);
      for (int c = std::max(0, x - r); c <= std::min(g.n - 1, x + r); ++c) {
        const double lo = std::max(-g.half_width, g.center(c) - half);
        const double hi = std::min(g.half_width, g.center(c) + half);
        double acc = 0.0;
        for (int y = 0; y < g.n; ++y) {
          const double a = std::max(lo, g.center(y) - 0.5 * h), b = std::min(hi, g.center(y) + 0.5 * h);
          if (b > a) acc += std::abs(f.at(y)) * (b - a);
        }
        out[std::size_t(x)] = std::max(out[std::size_t(x)], acc / (hi - lo));
      }
    }
  }
  return out;
}

/// 1D tensor midpoint quadrature of the double integral
/// int_{-r}^{r} int_{lo}^{hi} |Delta_h^M f(x)| dx dh for a closed form.
template <class F>
double double_integral(F f, double lo, double hi, double r, int M, int nx = 2000, int nh = 2000) {
  double acc = 0.0;
  const double dx = (hi - lo) / nx, dh = 2.0 * r / nh;
  for (int a = 0; a < nh; ++a) {
    const double h = -r + (a + 0.5) * dh;
    for (int b = 0; b < nx; ++b) {
      const double x = lo + (b + 0.5) * dx;
      double d = 0.0;
      for (int j = 0; j <= M; ++j) {
        double c = 1.0;
        for (int t = 1; t <= j; ++t) c = c * (M - j + t) / t;
        d += ((j % 2) ? -c : c) * f(x + (M - j) * h);
      }
      acc += std::abs(d);
    }
  }
  return acc * dx * dh;
}

}  // namespace oracle
