#include <cmath>

#include "doctest.h"
#include "dilatest/error.hpp"
#include "dilatest/norms.hpp"
#include "oracles.hpp"

using namespace dilatest;

namespace {

GridFunction sampled(const Grid& g, std::function<double(const Point&)> fn) { return GridFunction::sample(g, {"f", std::move(fn)}); }

SpaceParams params(SpaceKind kind, double p, double q, int M = 2) {
  SpaceParams sp;
  sp.kind = kind;
  sp.p = p;
  sp.q = q;
  sp.M = M;
  return sp;
}

WeightSequence geometric(double s, double p, const Grid& g, int K) {
  return WeightSequence::from_spec(WeightSpec::geometric(s, WeightSpec::constant(1.0)), p, g, K);
}

double gauss(const Point& x) { return std::exp(-x[0] * x[0] / 2); }

}  // namespace

TEST_SUITE("norms") {

TEST_CASE("space parameters") {
  SpaceParams sp;
  CHECK_NOTHROW(sp.validate());
  CHECK(sp.sigma1() == 2.0);
  sp.theta = 2.0;
  CHECK(std::isinf(sp.sigma1()));
  sp.theta = 2.5;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp = SpaceParams{};
  sp.q = 0.5;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp = SpaceParams{};
  sp.sigma2 = 1.5;
  CHECK_THROWS_AS(sp.validate(), Error);
  sp = SpaceParams{};
  sp.alpha1 = 1.5;
  sp.alpha2 = 0.5;
  CHECK_FALSE(sp.warnings().empty());
}

TEST_CASE("zero function") {
  const Grid g{1, 8.0, 256};
  const auto z = GridFunction::constant(g, 0.0);
  const int K = default_diff_k_max(g);
  for (auto kind : {SpaceKind::B, SpaceKind::F}) {
    CHECK(diff_norm(z, geometric(1.0, 2.0, g, K), params(kind, 2, 2)) == 0.0);
    CHECK(star_norm(z, geometric(1.0, 2.0, g, K), params(kind, 2, 2)) == 0.0);
  }
}

TEST_CASE("ltilde of the constant one") {
  const Grid g{1, 8.0, 512};
  const auto rep = ltilde(GridFunction::constant(g, 1.0), GridFunction::constant(g, 1.0), 1.0);
  CHECK(rep.interior == doctest::Approx(2.0 * (2.0 * g.half_width - 2.0)).epsilon(1e-12));
  CHECK(rep.value > rep.interior);
  CHECK(rep.clipped_fraction > 0.0);
}

TEST_CASE("ltilde against nested quadrature") {
  const Grid g{1, 8.0, 1024};
  const auto f = sampled(g, gauss);
  const auto t0 = sample_weight(WeightSpec::power(0.5), 0, g);
  // inner L1 norm of the gaussian over (x-1, x+1) in closed form, outer integral by a dense midpoint rule
  const double c = std::sqrt(std::numbers::pi / 2);
  double acc = 0.0;
  const int n = 200000;
  const double dx = 16.0 / n;
  for (int i = 0; i < n; ++i) {
    const double x = -8.0 + (i + 0.5) * dx;
    const double lo = std::max(-8.0, x - 1), hi = std::min(8.0, x + 1);
    const double inner = c * (std::erf(hi / std::sqrt(2.0)) - std::erf(lo / std::sqrt(2.0)));
    acc += std::abs(x) * inner * inner * dx;
  }
  CHECK(ltilde_norm(f, t0, 2.0) == doctest::Approx(std::sqrt(acc)).epsilon(0.01));
}

TEST_CASE("truncation levels") {
  const Grid g{1, 8.0, 4096};
  CHECK(default_diff_k_max(g) == 6);
  CHECK(default_diff_k_max(Grid{1, 8.0, 1024}) == 4);
  SpaceParams sp;
  CHECK(resolve_k_max(sp, g) == 6);
  sp.k_max = 3;
  CHECK(resolve_k_max(sp, g) == 3);
  sp.k_max = 7;
  CHECK_THROWS_AS(resolve_k_max(sp, g), Error);
}

TEST_CASE("difference norms match the brute-force oracle") {
  const Grid g{1, 4.0, 256};
  const int K = default_diff_k_max(g);
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0]) * (1 + std::sin(2 * x[0])); });
  for (auto kind : {SpaceKind::B, SpaceKind::F})
    for (int M : {1, 2, 3})
      for (double q : {1.0, 2.0, 3.0}) {
        const auto sp = params(kind, 2.0, q, M);
        CHECK(diff_norm(f, geometric(0.5, 2.0, g, K), sp) == doctest::Approx(oracle::diff_norm(f, 0.5, sp, K)).epsilon(1e-10));
      }
}

TEST_CASE("starred norms match the brute-force oracle") {
  const Grid g{1, 4.0, 256};
  const int K = default_diff_k_max(g);
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0]) * std::cos(x[0]); });
  for (int M : {1, 2})
    for (double q : {1.0, 2.0}) {
      const auto sp = params(SpaceKind::B, 2.0, q, M);
      CHECK(star_norm(f, geometric(0.5, 2.0, g, K), sp) == doctest::Approx(oracle::star_norm_b(f, 0.5, sp, K)).epsilon(1e-10));
    }
}

TEST_CASE("starred norm of the constant one") {
  const Grid g{1, 2.0, 256};
  const auto t = WeightSequence::from_spec(WeightSpec::constant(1.0), 1.0, g, default_diff_k_max(g));
  const auto rep = star_norm_report(GridFunction::constant(g, 1.0), t, params(SpaceKind::B, 1.0, 1.0));
  CHECK(rep.level_part == 0.0);
  CHECK(rep.value == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("gaussian difference norm converges in the level sum") {
  const Grid g{1, 8.0, 4096};
  const auto rep = diff_norm_report(sampled(g, gauss), geometric(0.5, 2.0, g, default_diff_k_max(g)), params(SpaceKind::B, 2, 2));
  CHECK(std::isfinite(rep.value));
  CHECK(rep.tail_fraction <= 0.01);
  CHECK_FALSE(rep.unreliable);
  CHECK(rep.level_terms.size() == 7);
}

TEST_CASE("B and F agree for p equal to q") {
  const Grid g{1, 8.0, 1024};
  const auto f = sampled(g, gauss);
  const auto t = geometric(0.5, 2.0, g, default_diff_k_max(g));
  CHECK(diff_norm(f, t, params(SpaceKind::B, 2, 2)) == doctest::Approx(diff_norm(f, t, params(SpaceKind::F, 2, 2))).epsilon(1e-12));
}

TEST_CASE("2D norms are finite and positive") {
  const Grid g{2, 4.0, 64};
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); });
  const auto t = geometric(0.5, 2.0, g, default_diff_k_max(g));
  for (auto kind : {SpaceKind::B, SpaceKind::F}) {
    const double d = diff_norm(f, t, params(kind, 2, 2)), s = star_norm(f, t, params(kind, 2, 2));
    CHECK(std::isfinite(d));
    CHECK(d > 0);
    CHECK(std::isfinite(s));
    CHECK(s > 0);
  }
}

}  // TEST_SUITE
