#pragma once

#include <optional>
#include <vector>

#include "dilatest/grid.hpp"
#include "dilatest/lp_fourier.hpp"
#include "dilatest/space.hpp"
#include "dilatest/verdict.hpp"
#include "dilatest/weights.hpp"

namespace dilatest {

/// The unique i with lambda < 2^i <= 2 lambda.
int choose_i(double lambda);

struct Dilated {
  GridFunction g;
  /// Share of the L1 mass of f over the lambda-enlarged box that falls outside the domain.
  double clipped_fraction = 0.0;
};

/// g(x) = f(lambda x), zero where lambda x leaves the domain. Throws
/// ClippingExcessive when more than 1% of the mass is clipped.
Dilated dilate_report(const GridFunction& f, double lambda, double max_clipped = 0.01);
GridFunction dilate(const GridFunction& f, double lambda);

struct HReport {
  double H = 0.0;
  int level = 0;
  DyadicCube cube;
  /// Running max over levels 0..l.
  std::vector<double> trace;
};

/// max over l = 0..k_max and level-l cubes inside the domain of
/// ||t_l(./lambda)||_{L_p(Q)} / ||t_l||_{L_p(Q)}.
HReport compute_H_report(const WeightSequence& t, double lambda, int k_max);
double compute_H(const WeightSequence& t, double lambda, int k_max);

/// sup over grid samples and levels 0..k_max of t_l(x/lambda) / t_l(x).
double pointwise_ratio_sup(const WeightSequence& t, double lambda, int k_max);

struct SobolevReport {
  double value = 0.0;
  /// Running sup on [-L 2^j, L 2^j]^n at the grid spacing, j = 0..doublings.
  std::vector<double> trace;
  Verdict verdict = Verdict::Inconclusive;
  bool divergent() const { return verdict == Verdict::Divergent; }
};

/// sup_x omega(x/lambda) / omega(x) over grid samples; Divergent when the
/// running sup grows >= 2x on the last two domain doublings.
SobolevReport sobolev_sup_ratio(const WeightSpec& omega, double lambda, const Grid& grid, int doublings = 2);

enum class NormChoice { Diff, Star, Fourier };

struct DilationReport {
  double lambda = 1.0;
  int i = 1;
  double H = 1.0;
  double norm_before = 0.0;
  double norm_after = 0.0;
  /// lambda^{alpha2 - n/p} H
  double bound_shape = 1.0;
  double observed_c = 0.0;
  /// norm_after / (lambda^{alpha2 - n/p} norm_before)
  double naive_c = 0.0;
  double clipped_fraction = 0.0;
};

struct TheoremReport {
  std::vector<DilationReport> rows;
  /// max / median of observed_c
  double spread = 0.0;
  double naive_spread = 0.0;
  /// least-squares slope of log(norm_after / norm_before) against log lambda
  double slope = 0.0;
  int k_max = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Dilation sweep: norm before and after, H and observed_c per lambda.
/// PASS when max observed_c <= 3 median.
TheoremReport verify_theorem(const GridFunction& f, const WeightSequence& t, const SpaceParams& sp,
                             const std::vector<double>& lambdas, NormChoice norm = NormChoice::Diff);

/// max / median of positive values.
double spread_ratio(std::vector<double> values);
/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dilatest
