#pragma once

#include <complex>
#include <vector>

#include "dilatest/grid.hpp"
#include "dilatest/space.hpp"
#include "dilatest/weights.hpp"

namespace dilatest {

/// Radial cutoff used to build phi_0.
///   Standard  transition on [1, 3/2]: e(1-u) / (e(1-u) + e(u)), u = 2(r-1)
///   Steep     the same shape squeezed onto [1, 5/4]
enum class Profile { Standard, Steep };

/// phi_0 at radius r: 1 for r <= 1, 0 beyond the transition, smooth between.
double phi0_profile(double r, Profile profile = Profile::Standard);

/// Largest k with 3 * 2^{k-1} <= pi N / (2L).
int default_k_max(const Grid& grid);

/// pi N / (2L), the largest DFT frequency magnitude per axis.
double nyquist(const Grid& grid);

/// Signed angular DFT frequencies pi m / L for one axis, in FFT order.
std::vector<double> dft_frequencies(const Grid& grid);

class ResolutionOfUnity {
 public:
  /// k_max < 0 selects default_k_max. Throws NyquistExceeded when 2^{k_max}
  /// exceeds the grid Nyquist frequency.
  static ResolutionOfUnity build(const Grid& grid, int k_max = -1, Profile profile = Profile::Standard);

  int k_max() const { return k_max_; }
  const Grid& grid() const { return grid_; }
  Profile profile() const { return profile_; }

  double phi0(double r) const { return phi0_profile(r, profile_); }
  /// phi_0(2^{-k} r) - phi_0(2^{1-k} r) for k >= 1.
  double phi(int k, double r) const;
  /// phi_k on the DFT lattice of the grid, flat layout as the samples.
  std::vector<double> multiplier(int k) const;

 private:
  Grid grid_;
  int k_max_ = 0;
  Profile profile_ = Profile::Standard;
};

/// Forward / inverse unnormalized DFT over the grid (inverse not scaled).
std::vector<std::complex<double>> dft(const Grid& grid, std::vector<std::complex<double>> data, bool inverse);

struct LPDecomposition {
  /// F^{-1} phi_k * f for k = 0..K_max.
  std::vector<GridFunction> pieces;
  /// Largest imaginary residue relative to max |f|.
  double imag_residue = 0.0;
};

/// Pieces via inverse-DFT(phi_k DFT(f)) on the periodized grid.
LPDecomposition lp_pieces(const GridFunction& f, const ResolutionOfUnity& ru);

/// B: (sum_k ||t_k piece_k||_p^q)^{1/q}; F: ||(sum_k t_k^q |piece_k|^q)^{1/q}||_p.
/// Throws MissingLevels when t stops before ru.k_max().
double fourier_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp, const ResolutionOfUnity& ru);

/// Same aggregation with the level factor 2^{ks} hardcoded.
double fourier_norm_classical(const GridFunction& f, double s, const SpaceParams& sp, const ResolutionOfUnity& ru);

}  // namespace dilatest
