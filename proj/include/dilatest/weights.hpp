#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dilatest/dyadic.hpp"
#include "dilatest/grid.hpp"
#include "dilatest/verdict.hpp"

namespace dilatest {

struct WeightSpec;

struct ConstantWeight {
  double c = 1.0;
};
/// |x|^beta
struct PowerWeight {
  double beta = 0.0;
};
/// |x - x0|^delta
struct ShiftedPowerWeight {
  Point x0{0.0, 0.0};
  double delta = 0.0;
};
/// 2^{ks} w(x), or 2^{ks} w(2^{-k} x) when `dilated`.
struct GeometricLevelWeight {
  double s = 0.0;
  std::shared_ptr<const WeightSpec> base;
  bool dilated = false;
};
/// Level-only scalar 2^{sk} (1+k)^b (1 + log(1+k))^c.
struct AdmissibleSeqWeight {
  double s = 0.0, b = 0.0, c = 0.0;
};
struct ProductWeight {
  std::vector<WeightSpec> factors;
};

/// Closed-form weight descriptor; level-dependent variants read the level k.
struct WeightSpec {
  std::variant<ConstantWeight, PowerWeight, ShiftedPowerWeight, GeometricLevelWeight, AdmissibleSeqWeight, ProductWeight>
      node;

  static WeightSpec constant(double c) { return {ConstantWeight{c}}; }
  static WeightSpec power(double beta) { return {PowerWeight{beta}}; }
  static WeightSpec shifted_power(Point x0, double delta) { return {ShiftedPowerWeight{x0, delta}}; }
  static WeightSpec geometric(double s, WeightSpec base, bool dilated = false);
  static WeightSpec admissible(double s, double b, double c) { return {AdmissibleSeqWeight{s, b, c}}; }
  static WeightSpec product(std::vector<WeightSpec> factors) { return {ProductWeight{std::move(factors)}}; }

  /// True when no variant in the tree depends on x.
  bool constant_in_x() const;
  std::string describe() const;
};

/// Closed-form value at level k. Throws NonPositiveValue on zero, negative or
/// non-finite results.
double eval_weight(const WeightSpec& spec, int k, const Point& x, int dim);

/// Sampled level k of the spec on `grid`, keeping the closed form.
GridFunction sample_weight(const WeightSpec& spec, int k, const Grid& grid);

/// {t_k}_{k=0..K}: one positive grid function per level plus the exponent p.
class WeightSequence {
 public:
  static WeightSequence from_spec(const WeightSpec& spec, double p, const Grid& grid, int k_max);
  static WeightSequence from_levels(std::vector<GridFunction> levels, double p);

  int k_max() const { return int(levels_.size()) - 1; }
  double p() const { return p_; }
  const Grid& grid() const { return levels_.front().grid(); }
  const GridFunction& level(int k) const;
  const std::optional<WeightSpec>& spec() const { return spec_; }

  /// t_k(x) off the grid: closed form when known, otherwise interpolation.
  double evaluate(int k, const Point& x) const;

  /// Same sequence on another grid (closed form or interpolation).
  WeightSequence resampled(const Grid& grid) const;

 private:
  std::vector<GridFunction> levels_;
  double p_ = 2.0;
  std::optional<WeightSpec> spec_;
};

double conjugate(double p);
/// theta * (p/theta)' = theta p / (p - theta); +inf when theta == p.
double sigma1_of(double theta, double p);

struct RefinementStep {
  int n = 0;
  int depth = 0;
  double constant = 0.0;
};

struct ApReport {
  double constant = 0.0;
  ScannedCube argmax;
  int level_min = 0;
  int level_max = 0;
  std::vector<RefinementStep> trace;
  Verdict verdict = Verdict::Inconclusive;
  std::size_t cubes_scanned = 0;
  std::size_t boundary_cubes = 0;
};

struct ApOptions {
  /// Number of grids in the refinement trace (only used with a closed form).
  int refinements = 3;
  /// Grid refinement factor per step; the scan depth advances by log2 of it
  /// so the finest cubes keep the same number of cells.
  int refine_factor = 4;
};

/// sup over the scan family of M_Q(gamma) * M_{Q,p'/p}(gamma^{-1}).
ApReport ap_constant(const GridFunction& gamma, double p, int depth, const ApOptions& options = {});
/// sup over the scan family of M_Q(gamma) / min_{samples in Q} gamma.
ApReport a1_constant(const GridFunction& gamma, int depth, const ApOptions& options = {});

struct ApPropertiesReport {
  double ap = 0.0;
  /// A_q for q = 2p, and A_q / A_p (at most 1 by Hoelder).
  double aq = 0.0;
  double aq_over_ap = 0.0;
  /// A_{p'} of gamma^{1-p'}, and its defect against A_p^{p'-1}.
  double dual_ap = 0.0;
  double duality_defect = 0.0;
  /// worst (|E|/|Q|)^{p-1} M_Q(gamma) / M_E(gamma) over random E in Q.
  double doubling_worst = 0.0;
  double doubling_over_ap = 0.0;
  /// A_p of gamma(lambda .), NaN when gamma has no closed form.
  double dilated_ap = 0.0;
};

ApPropertiesReport ap_properties_check(const GridFunction& gamma, double p, double lambda, int depth,
                                       std::uint64_t seed = 1, int pairs = 2000);

/// (integral over Q_{k,m} of t_k^p)^{1/p}.
double cube_weight_norm(const WeightSequence& t, int k, const DyadicCube& cube);

struct XClassParams {
  double alpha1 = 0.0, alpha2 = 0.0;
  double sigma1 = 2.0, sigma2 = 2.0;
  double p = 2.0;
};

struct XClassArgmax {
  int k = 0;
  int j = 0;
  ScannedCube cube;
};

struct XClassReport {
  double c1 = 0.0, c2 = 0.0;
  XClassArgmax argmax1, argmax2;
  /// Running (C1, C2) with the level cap K = 0..depth.
  std::vector<double> c1_trace, c2_trace;
  Verdict verdict = Verdict::Inconclusive;
  bool alpha_order_violated = false;
  std::size_t cubes_scanned = 0;
};

XClassReport xclass_check(const WeightSequence& t, const XClassParams& params, int depth);

}  // namespace dilatest
