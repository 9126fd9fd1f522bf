#pragma once

#include <string>
#include <vector>

namespace dilatest {

enum class SpaceKind { B, F };

/// Parameters shared by the Fourier and difference norms.
struct SpaceParams {
  SpaceKind kind = SpaceKind::B;
  double p = 2.0;
  double q = 2.0;
  int M = 2;
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  double theta = 1.0;
  double sigma2 = 2.0;
  /// Level truncation; negative means the grid default.
  int k_max = -1;

  /// theta (p/theta)'.
  double sigma1() const;

  /// Throws InvalidExponent for p, q outside [1, inf), theta outside [1, p],
  /// sigma2 < p or M < 1.
  void validate() const;

  /// Soft violations (for example alpha outside 0 < alpha1 <= alpha2 < M).
  std::vector<std::string> warnings() const;
};

}  // namespace dilatest
