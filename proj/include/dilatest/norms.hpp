#pragma once

#include <vector>

#include "dilatest/grid.hpp"
#include "dilatest/space.hpp"
#include "dilatest/weights.hpp"

namespace dilatest {

struct LTildeReport {
  /// Outer integral over the whole domain, windows clipped to it.
  double value = 0.0;
  /// Outer integral over points whose unit window stays inside the domain.
  double interior = 0.0;
  /// Share of value^p coming from clipped windows.
  double clipped_fraction = 0.0;
};

/// (int t0^p(x) ||f||_{L1(x + I^n)}^p dx)^{1/p}.
LTildeReport ltilde(const GridFunction& f, const GridFunction& t0, double p);
double ltilde_norm(const GridFunction& f, const GridFunction& t0, double p);

/// Largest K with 2^{-K} >= 4 spacing.
int default_diff_k_max(const Grid& grid);

/// Level truncation actually used for sp on grid; throws ResolutionExceeded
/// when sp.k_max asks for scales below 4 spacings.
int resolve_k_max(const SpaceParams& sp, const Grid& grid);

struct NormReport {
  double value = 0.0;
  /// L~_p term for diff_norm, cube L1 term for star_norm.
  double zero_order = 0.0;
  /// The k >= 1 part.
  double level_part = 0.0;
  /// Per-level size for k = 1..K (index 0 unused).
  std::vector<double> level_terms;
  /// Share of the level part carried by level K.
  double tail_fraction = 0.0;
  /// Share of the level part carried by windows or cubes touching the boundary.
  double boundary_fraction = 0.0;
  int k_max = 0;
  /// boundary_fraction > 0.2
  bool unreliable = false;
};

/// B~ / F~ norm built from the window averages delta^M(x + 2^{-k} I^n) f,
/// k = 1..K, plus the L~_p term.
NormReport diff_norm_report(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp);
double diff_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp);

/// Starred norms over dyadic cubes: plain cubes for B, expanded cubes with
/// the 2^{kn/p} t_{k,m} scaling for F, plus the cube L1 term.
NormReport star_norm_report(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp);
double star_norm(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp);

}  // namespace dilatest
