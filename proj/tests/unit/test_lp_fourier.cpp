#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dilatest/error.hpp"
#include "dilatest/lp_fourier.hpp"
#include "oracles.hpp"

using namespace dilatest;

namespace {

GridFunction sampled(const Grid& g, std::function<double(const Point&)> fn) { return GridFunction::sample(g, {"f", std::move(fn)}); }

SpaceParams params(SpaceKind kind, double p, double q) {
  SpaceParams sp;
  sp.kind = kind;
  sp.p = p;
  sp.q = q;
  sp.sigma2 = std::max(p, 2.0);
  return sp;
}

double piece_energy(const GridFunction& g) {
  double e = 0.0;
  for (double v : g.samples()) e += v * v;
  return e;
}

}  // namespace

TEST_SUITE("lp_fourier") {

TEST_CASE("cutoff profile") {
  for (auto pr : {Profile::Standard, Profile::Steep}) {
    CHECK(phi0_profile(0.0, pr) == 1.0);
    CHECK(phi0_profile(1.0, pr) == 1.0);
    CHECK(phi0_profile(1.5, pr) == 0.0);
    CHECK(phi0_profile(7.0, pr) == 0.0);
    double prev = 1.0;
    for (double r = 1.0; r <= 1.5; r += 0.01) {
      CHECK(phi0_profile(r, pr) <= prev);
      prev = phi0_profile(r, pr);
    }
  }
  CHECK(phi0_profile(1.1, Profile::Steep) < phi0_profile(1.1, Profile::Standard) + 1e-15);
}

TEST_CASE("resolution of unity") {
  const auto ru = ResolutionOfUnity::build(Grid{1, 8.0, 1024});
  CHECK(ru.phi(1, 0.5) == 0.0);
  for (int K = 0; K <= ru.k_max(); ++K) {
    double sum = ru.phi0(1.0);
    for (int k = 1; k <= K; ++k) sum += ru.phi(k, 1.0);
    CHECK(sum == 1.0);
  }
  for (int k = 1; k <= ru.k_max(); ++k) {
    CHECK(ru.phi(k, std::ldexp(1.0, k - 1)) == 0.0);
    CHECK(ru.phi(k, 3 * std::ldexp(1.0, k - 1)) == 0.0);
    CHECK(ru.phi(k, 0.99 * std::ldexp(1.0, k - 1)) == 0.0);
  }
}

TEST_CASE("default truncation and nyquist") {
  const Grid g{1, 8.0, 1024};
  const int K = default_k_max(g);
  CHECK(3 * std::ldexp(1.0, K - 1) <= nyquist(g));
  CHECK(3 * std::ldexp(1.0, K) > nyquist(g));
  CHECK_THROWS_AS(ResolutionOfUnity::build(g, 12), Error);
}

TEST_CASE("fft agrees with the naive transform") {
  const Grid g{1, 8.0, 64};
  std::mt19937 rng(2);
  std::normal_distribution<double> n01;
  std::vector<std::complex<double>> in(64);
  for (auto& z : in) z = {n01(rng), n01(rng)};
  for (bool inverse : {false, true}) {
    const auto fast = dft(g, in, inverse);
    const auto slow = oracle::naive_dft(in, inverse);
    for (std::size_t i = 0; i < in.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) <= 1e-11);
  }
}

TEST_CASE("low frequency functions live in piece zero") {
  const Grid g{1, 8.0, 512};
  const double w = 2 * std::numbers::pi / g.half_width;  // frequency 0.785 < 1
  const auto f = sampled(g, [w](const Point& x) { return std::cos(w * x[0]) + 0.3 * std::sin(0.5 * w * x[0]); });
  const auto lp = lp_pieces(f, ResolutionOfUnity::build(g));
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(lp.pieces[0][i] == doctest::Approx(f[i]).epsilon(1e-12));
  for (std::size_t k = 1; k < lp.pieces.size(); ++k) CHECK(lp.pieces[k].lp_norm(INFINITY) <= 1e-12);

  const auto t = WeightSequence::from_spec(WeightSpec::geometric(1.5, WeightSpec::constant(1.0)), 2.0, g, default_k_max(g));
  for (auto kind : {SpaceKind::B, SpaceKind::F})
    CHECK(fourier_norm(f, t, params(kind, 2.0, 3.0), ResolutionOfUnity::build(g)) == doctest::Approx(f.lp_norm(2.0)).epsilon(1e-12));
}

TEST_CASE("cos(4x) sits in piece two") {
  const Grid g{1, std::numbers::pi, 256};
  const auto f = sampled(g, [](const Point& x) { return std::cos(4 * x[0]); });
  const auto lp = lp_pieces(f, ResolutionOfUnity::build(g));
  double total = 0.0;
  for (const auto& pc : lp.pieces) total += piece_energy(pc);
  CHECK(piece_energy(lp.pieces[2]) / total == doctest::Approx(1.0).epsilon(1e-12));

  // the naive DFT puts all energy of cos(4x) at |xi| = 4, where phi_2 = 1 and phi_3 = 0
  std::vector<std::complex<double>> in(f.samples().begin(), f.samples().end());
  const auto spec = oracle::naive_dft(in, false);
  const auto freq = dft_frequencies(g);
  for (std::size_t m = 0; m < spec.size(); ++m)
    if (std::abs(spec[m]) > 1e-9) CHECK(std::abs(freq[m]) == doctest::Approx(4.0));
}

TEST_CASE("zero function") {
  const Grid g{2, 4.0, 32};
  const auto z = GridFunction::constant(g, 0.0);
  const auto ru = ResolutionOfUnity::build(g);
  for (const auto& pc : lp_pieces(z, ru).pieces) CHECK(pc.lp_norm(INFINITY) == 0.0);
  CHECK(fourier_norm_classical(z, 1.0, params(SpaceKind::F, 2.0, 2.0), ru) == 0.0);
}

TEST_CASE("pieces reconstruct band-limited functions in 2D") {
  const Grid g{2, 4.0, 64};
  const double w = std::numbers::pi / g.half_width;
  const auto f = sampled(g, [w](const Point& x) { return std::cos(3 * w * x[0]) * std::sin(5 * w * x[1] + 0.2) + 0.5; });
  const auto lp = lp_pieces(f, ResolutionOfUnity::build(g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = 0.0;
    for (const auto& pc : lp.pieces) s += pc[i];
    CHECK(s == doctest::Approx(f[i]).epsilon(1e-10));
  }
}

TEST_CASE("fourier norms match the naive-DFT oracle") {
  const Grid g{1, 8.0, 256};
  const auto ru = ResolutionOfUnity::build(g);
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0] / 0.5); });
  for (auto kind : {SpaceKind::B, SpaceKind::F})
    for (double s : {0.5, 1.0, 2.0}) {
      const auto sp = params(kind, 2.0, 1.5);
      CHECK(fourier_norm_classical(f, s, sp, ru) == doctest::Approx(oracle::fourier_norm(f, s, sp, ru.k_max())).epsilon(1e-10));
    }
}

TEST_CASE("gaussian norm grows with smoothness index") {
  const Grid g{1, 8.0, 1024};
  const auto ru = ResolutionOfUnity::build(g);
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0] / 2); });
  const auto sp = params(SpaceKind::B, 2.0, 2.0);
  CHECK(fourier_norm_classical(f, 2.0, sp, ru) > fourier_norm_classical(f, 1.0, sp, ru));
}

TEST_CASE("B and F coincide when p equals q") {
  const Grid g{2, 4.0, 64};
  const auto ru = ResolutionOfUnity::build(g);
  const auto f = sampled(g, [](const Point& x) { return std::exp(-x[0] * x[0] - 2 * x[1] * x[1]) * (1 + x[0]); });
  for (double p : {1.0, 2.0, 3.0})
    CHECK(fourier_norm_classical(f, 1.0, params(SpaceKind::B, p, p), ru) ==
          doctest::Approx(fourier_norm_classical(f, 1.0, params(SpaceKind::F, p, p), ru)).epsilon(1e-12));
}

TEST_CASE("fourier norm errors") {
  const Grid g{1, 8.0, 256};
  const auto ru = ResolutionOfUnity::build(g);
  const auto f = GridFunction::constant(g, 1.0);
  const auto shallow = WeightSequence::from_spec(WeightSpec::constant(1.0), 2.0, g, ru.k_max() - 1);
  CHECK_THROWS_AS(fourier_norm(f, shallow, params(SpaceKind::B, 2, 2), ru), Error);
  CHECK_THROWS_AS(lp_pieces(GridFunction::constant(Grid{1, 8.0, 128}, 1.0), ru), Error);
}

}  // TEST_SUITE
