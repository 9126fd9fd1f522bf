#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dilatest/dyadic.hpp"
#include "dilatest/grid.hpp"

namespace dilatest {

/// C(M, j)
double binomial(int M, int j);

/// Delta_h^M f(x) = sum_j (-1)^j C(M,j) f(x + (M-j) h), off-grid values by
/// multilinear interpolation. Throws OutOfDomain if any point leaves [-L,L]^n.
double delta_m(const GridFunction& f, int M, const Point& h, const Point& x);

/// One node of the displacement quadrature over the box (-r, r)^n.
struct DisplacementNode {
  Point h{0.0, 0.0};
  double weight = 0.0;
  /// Displacement in whole cells when the node sits on the grid lattice.
  std::array<int, 2> cells{0, 0};
  bool aligned = false;
};

/// Displacement nodes for radius r: grid-aligned lattice points (trapezoid
/// end weights) with at most 32 intervals per axis when r is a whole number
/// of cells, otherwise at most 32 midpoint nodes per axis. Weights sum to (2r)^n.
std::vector<DisplacementNode> displacement_nodes(const Grid& grid, double radius);

/// Calls `visit(weight, diff, valid)` once per displacement node, where
/// `diff` integrates |Delta_h^M f| and `valid` integrates the indicator of
/// cells whose M-step stencil stays inside the domain.
void sweep_differences(const GridFunction& f, int M, double radius,
                       const std::function<void(double weight, const PrefixTable& diff, const PrefixTable& valid)>& visit);

/// delta^M(Q) f = l(Q)^{-2n} int_{l(Q) I^n} int_Q |Delta_h^M f(x)| dx dh.
double delta_avg_cube(const GridFunction& f, const Box& cube, int M);

/// delta^M(x + 2^{-k} I^n) f = 2^{2kn} int_{2^{-k} I^n} int_{x + 2^{-k} I^n} |Delta_h^M f(y)| dy dh.
double delta_avg_window(const GridFunction& f, const Point& x, int k, int M);

/// delta^M(Q_{k,m~}) f with the side 5 * 2^{-k} normalization and h in 2^{-k} I^n.
double delta_avg_expanded(const GridFunction& f, int k, const DyadicCube& cube, int M);

/// delta^M(x + 2^{-k} I^n) f at every grid point.
struct WindowField {
  std::vector<double> values;
  /// 1 where the window or its M-step stencil reaches outside the domain.
  std::vector<std::uint8_t> near_boundary;
};
WindowField window_differences(const GridFunction& f, int k, int M);

/// delta^M over every level-k dyadic cube covering the domain (plain cubes
/// Q_{k,m}, or the expanded cubes Q_{k,m~} when `expanded`).
struct CubeDifferences {
  std::vector<DyadicCube> cubes;
  std::vector<double> values;
  std::vector<std::uint8_t> clipped;
};
CubeDifferences cube_differences(const GridFunction& f, int k, int M, bool expanded);

}  // namespace dilatest
