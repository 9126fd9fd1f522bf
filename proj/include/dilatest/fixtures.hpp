#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilatest/grid.hpp"

namespace dilatest {

/// Built-in test function, selected by name:
///   gaussian             exp(-|x - center|^2 / (2 width^2))
///   bump                 prod exp(1 - 1 / (1 - ((x_a - center_a) / width)^2)) inside the box
///   sine_packet          sin(freq x_0) times the gaussian envelope
///   mollified_indicator  prod (erf((x_a - a) / eps) - erf((x_a - b) / eps)) / 2
///   constant             value
///   zero
struct FixtureSpec {
  std::string name = "gaussian";
  double width = 1.0;
  Point center{0.0, 0.0};
  double freq = 4.0;
  double a = 0.0, b = 1.0, eps = 0.05;
  double value = 1.0;
  double amplitude = 1.0;
};

/// Throws ConfigError for unknown names.
ClosedForm make_fixture(const FixtureSpec& spec, int dim);

/// Five smooth, rapidly decaying functions used for norm-equivalence brackets.
std::vector<FixtureSpec> equivalence_family();

/// `count` random sums of mollified indicators, reproducible from the seed.
std::vector<ClosedForm> random_family(std::uint64_t seed, int count, int dim, double half_width);

}  // namespace dilatest
