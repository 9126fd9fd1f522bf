#pragma once

#include <vector>

#include "dilatest/grid.hpp"
#include "dilatest/verdict.hpp"
#include "dilatest/weights.hpp"

namespace dilatest {

/// Centered dyadic-side maximal function: at each grid point the max of the
/// averages of |f| over cubes of side 2^j spacing (j = 0..log2 N) centered at
/// grid points and containing it, each cube clipped to the domain.
GridFunction hl_maximal(const GridFunction& f);

/// (M(|f|^sigma))^{1/sigma}.
GridFunction m_sigma(const GridFunction& f, double sigma);

/// ||(sum_k (M_sigma f_k)^q)^{1/q}||_p / ||(sum_k |f_k|^q)^{1/q}||_p, 0 when
/// the denominator vanishes.
double fs_inequality_ratio(const std::vector<GridFunction>& fs, double p, double q, double sigma);

struct MaximalPrecondition {
  Verdict verdict = Verdict::Pass;
  /// A_{p/theta} (A_1 when theta == p) estimate of t_k^p per level.
  std::vector<double> constants;
  std::vector<Verdict> verdicts;
};

/// Scans t_k^p in A_{p/theta} for k < levels. depth < 0 picks finest level - 2.
MaximalPrecondition maximal_precondition(const WeightSequence& t, double theta, int levels, int depth = -1,
                                         const ApOptions& options = {3, 4});

struct WeightedMaximalReport {
  double ratio = 0.0;
  /// max over k of ||t_k M f_k||_p / ||t_k f_k||_p.
  double worst_single = 0.0;
};

/// ||(sum_k t_k^q (M f_k)^q)^{1/q}||_p / ||(sum_k t_k^q |f_k|^q)^{1/q}||_p.
/// When `check` is set, throws PreconditionFailed if the A_{p/theta} scan fails.
WeightedMaximalReport weighted_maximal(const std::vector<GridFunction>& fs, const WeightSequence& t, double p, double q,
                                       double theta, bool check = true);
double weighted_maximal_ratio(const std::vector<GridFunction>& fs, const WeightSequence& t, double p, double q,
                              double theta, bool check = true);

}  // namespace dilatest
