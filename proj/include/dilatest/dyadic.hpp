#pragma once

#include <vector>

#include "dilatest/grid.hpp"

namespace dilatest {

/// [2^{-k} m_i, 2^{-k}(m_i + 1)) per axis.
Box cube_box(const DyadicCube& c);

/// The five-fold enlargement ((m_i - 2) 2^{-k}, (m_i + 3) 2^{-k}) per axis.
Box expanded_cube(const DyadicCube& c);

/// Mean of |f| over b intersected with the domain.
/// Throws EmptyIntersection when that intersection holds no full grid cell.
double box_average(const GridFunction& f, const Box& b);

/// (mean of |f|^p)^{1/p} over b intersected with the domain; p = +inf gives
/// the max of |samples| over cells meeting b.
double box_lp_average(const GridFunction& f, const Box& b, double p);

/// Every level-k dyadic cube meeting b in positive measure, in lexicographic
/// order (axis 0 fastest). Throws ResolutionExceeded when 2^{-k} < spacing.
std::vector<DyadicCube> cubes_covering(const Grid& grid, const Box& b, int k);

/// A member of the cube scan family used for sup-over-all-cubes estimates:
/// the dyadic cube Q_{k,m} translated by shift * 2^{-k} per axis, with shift
/// in {0, 1/3}. The box is already clipped to the domain.
struct ScannedCube {
  DyadicCube cube;
  Point shift{0.0, 0.0};
  Box box;
  bool clipped = false;
};

/// Dyadic cubes plus the one-third-shifted families at levels
/// [level_min, level_max], restricted to cubes meeting the domain.
std::vector<ScannedCube> scan_family(const Grid& grid, int level_min, int level_max);

}  // namespace dilatest
