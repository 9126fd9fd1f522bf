#include "dilatest/lp_fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>

#include "dilatest/error.hpp"

namespace dilatest {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double smooth_e(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double radius(const Grid& g, const std::vector<double>& freq, std::size_t idx) {
  const std::size_t i = idx % std::size_t(g.n);
  if (g.dim == 1) return std::abs(freq[i]);
  const std::size_t j = idx / std::size_t(g.n);
  return std::hypot(freq[i], freq[j]);
}

/// Per-level weighted aggregation shared by both norm paths.
double aggregate(const LPDecomposition& lp, const SpaceParams& sp, const std::function<double(int, std::size_t)>& weight) {
  sp.validate();
  const Grid& g = lp.pieces.front().grid();
  const double vol = g.cell_volume();
  const int K = int(lp.pieces.size()) - 1;
  const std::size_t size = g.size();
  if (sp.kind == SpaceKind::B) {
    double total = 0.0;
    for (int k = 0; k <= K; ++k) {
      long double acc = 0.0;
      const auto& piece = lp.pieces[std::size_t(k)];
      for (std::size_t idx = 0; idx < size; ++idx) acc += std::pow(std::abs(weight(k, idx) * piece[idx]), sp.p);
      total += std::pow(std::pow(double(acc) * vol, 1.0 / sp.p), sp.q);
    }
    return std::pow(total, 1.0 / sp.q);
  }
  long double acc = 0.0;
  for (std::size_t idx = 0; idx < size; ++idx) {
    double inner = 0.0;
    for (int k = 0; k <= K; ++k) inner += std::pow(std::abs(weight(k, idx) * lp.pieces[std::size_t(k)][idx]), sp.q);
    acc += std::pow(inner, sp.p / sp.q);
  }
  return std::pow(double(acc) * vol, 1.0 / sp.p);
}

}  // namespace

double phi0_profile(double r, Profile profile) {
  const double width = profile == Profile::Standard ? 0.5 : 0.25;
  if (r <= 1.0) return 1.0;
  if (r >= 1.0 + width) return 0.0;
  const double u = (r - 1.0) / width;
  const double a = smooth_e(1.0 - u), b = smooth_e(u);
  return a / (a + b);
}

double nyquist(const Grid& grid) { return std::numbers::pi * grid.n / (2.0 * grid.half_width); }

int default_k_max(const Grid& grid) {
  const double ny = nyquist(grid);
  int k = 0;
  while (3.0 * std::ldexp(1.0, k) <= ny) ++k;
  return k;
}

std::vector<double> dft_frequencies(const Grid& grid) {
  std::vector<double> out(std::size_t(grid.n));
  for (int m = 0; m < grid.n; ++m) {
    const int sm = m < grid.n / 2 ? m : m - grid.n;
    out[std::size_t(m)] = std::numbers::pi * sm / grid.half_width;
  }
  return out;
}

ResolutionOfUnity ResolutionOfUnity::build(const Grid& grid, int k_max, Profile profile) {
  grid.validate();
  if (k_max < 0) k_max = default_k_max(grid);
  if (std::ldexp(1.0, k_max) > nyquist(grid))
    throw Error(ErrorKind::NyquistExceeded, "2^K_max = " + std::to_string(std::ldexp(1.0, k_max)) +
                                                " exceeds the grid Nyquist frequency " + std::to_string(nyquist(grid)));
  ResolutionOfUnity ru;
  ru.grid_ = grid;
  ru.k_max_ = k_max;
  ru.profile_ = profile;
  return ru;
}

double ResolutionOfUnity::phi(int k, double r) const {
  if (k == 0) return phi0(r);
  return phi0(std::ldexp(r, -k)) - phi0(std::ldexp(r, 1 - k));
}

std::vector<double> ResolutionOfUnity::multiplier(int k) const {
  const auto freq = dft_frequencies(grid_);
  std::vector<double> out(grid_.size());
  for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = phi(k, radius(grid_, freq, idx));
  return out;
}

std::vector<std::complex<double>> dft(const Grid& grid, std::vector<std::complex<double>> data, bool inverse) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = grid.dim == 1 ? fftw_plan_dft_1d(grid.n, buf, buf, sign, FFTW_ESTIMATE)
                         : fftw_plan_dft_2d(grid.n, grid.n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return data;
}

LPDecomposition lp_pieces(const GridFunction& f, const ResolutionOfUnity& ru) {
  const Grid& g = f.grid();
  if (!(g == ru.grid())) throw Error(ErrorKind::PreconditionFailed, "resolution of unity built for another grid");
  const std::size_t size = g.size();
  std::vector<std::complex<double>> in(size);
  double fmax = 0.0;
  for (std::size_t idx = 0; idx < size; ++idx) {
    in[idx] = f[idx];
    fmax = std::max(fmax, std::abs(f[idx]));
  }
  const auto spectrum = dft(g, std::move(in), false);
  LPDecomposition out;
  for (int k = 0; k <= ru.k_max(); ++k) {
    const auto mult = ru.multiplier(k);
    std::vector<std::complex<double>> band(size);
    for (std::size_t idx = 0; idx < size; ++idx) band[idx] = spectrum[idx] * mult[idx];
    band = dft(g, std::move(band), true);
    std::vector<double> re(size);
    const double scale = 1.0 / double(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
      re[idx] = band[idx].real() * scale;
      if (fmax > 0.0) out.imag_residue = std::max(out.imag_residue, std::abs(band[idx].imag() * scale) / fmax);
    }
    out.pieces.emplace_back(g, std::move(re));
  }
  if (out.imag_residue > 1e-10)
    throw Error(ErrorKind::PreconditionFailed, "Littlewood-Paley pieces left an imaginary residue of " +
                                                   std::to_string(out.imag_residue));
  return out;
}

double fourier_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp, const ResolutionOfUnity& ru) {
  if (t.k_max() < ru.k_max())
    throw Error(ErrorKind::MissingLevels, "weight sequence has levels up to " + std::to_string(t.k_max()) +
                                              ", the decomposition needs " + std::to_string(ru.k_max()));
  const WeightSequence tt = t.grid() == f.grid() ? t : t.resampled(f.grid());
  const auto lp = lp_pieces(f, ru);
  return aggregate(lp, sp, [&](int k, std::size_t idx) { return tt.level(k)[idx]; });
}

double fourier_norm_classical(const GridFunction& f, double s, const SpaceParams& sp, const ResolutionOfUnity& ru) {
  const auto lp = lp_pieces(f, ru);
  return aggregate(lp, sp, [s](int k, std::size_t) { return std::exp2(k * s); });
}

}  // namespace dilatest
