#include <cmath>

#include "doctest.h"
#include "dilatest/error.hpp"
#include "dilatest/weights.hpp"

using namespace dilatest;

TEST_SUITE("weights") {

TEST_CASE("weight evaluation") {
  CHECK(eval_weight(WeightSpec::power(0.0), 0, {3.7, 0}, 1) == 1.0);
  CHECK(eval_weight(WeightSpec::power(2.0), 0, {-3.0, 0}, 1) == doctest::Approx(9.0));
  CHECK(eval_weight(WeightSpec::shifted_power({1, 0}, -0.5), 0, {5.0, 0}, 1) == doctest::Approx(0.5));
  CHECK(eval_weight(WeightSpec::geometric(0.5, WeightSpec::power(1.0)), 4, {3.0, 0}, 1) == doctest::Approx(12.0));
  CHECK(eval_weight(WeightSpec::geometric(0.0, WeightSpec::power(1.0), true), 2, {3.0, 0}, 1) == doctest::Approx(0.75));
  CHECK(eval_weight(WeightSpec::admissible(1.0, 1.0, 0.0), 3, {0.1, 0}, 1) == doctest::Approx(32.0));
  CHECK(eval_weight(WeightSpec::product({WeightSpec::constant(2.0), WeightSpec::power(1.0)}), 0, {0.0, 4.0}, 2) ==
        doctest::Approx(8.0));
  CHECK_THROWS_AS(eval_weight(WeightSpec::constant(-1.0), 0, {0, 0}, 1), Error);
  CHECK_THROWS_AS(eval_weight(WeightSpec::power(-1.0), 0, {0, 0}, 1), Error);
}

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(2.0) == 2.0);
  CHECK(conjugate(3.0) == doctest::Approx(1.5));
  CHECK(sigma1_of(1.0, 2.0) == 2.0);
  CHECK(std::isinf(sigma1_of(2.0, 2.0)));
}

TEST_CASE("ap of constants") {
  const Grid g{1, 8.0, 1024};
  for (double p : {1.5, 2.0, 4.0}) {
    const auto rep = ap_constant(GridFunction::constant(g, 3.0), p, 5);
    CHECK(rep.constant == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.verdict == Verdict::Pass);
  }
  CHECK(a1_constant(GridFunction::constant(g, 0.2), 5).constant == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ap is scale invariant") {
  const Grid g{1, 8.0, 1024};
  const auto w = sample_weight(WeightSpec::power(0.7), 0, g);
  const auto w3 = sample_weight(WeightSpec::product({WeightSpec::constant(3.0), WeightSpec::power(0.7)}), 0, g);
  CHECK(ap_constant(w, 2.0, 6).constant == doctest::Approx(ap_constant(w3, 2.0, 6).constant).epsilon(1e-12));
}

TEST_CASE("power weights in and out of A_2") {
  const Grid g{1, 8.0, 256};
  const auto inside = ap_constant(sample_weight(WeightSpec::power(0.5), 0, g), 2.0, g.finest_level() - 2);
  CHECK(inside.verdict == Verdict::Pass);
  CHECK(inside.trace.size() == 3);
  const auto outside = ap_constant(sample_weight(WeightSpec::power(-1.5), 0, g), 2.0, g.finest_level() - 2);
  CHECK(outside.verdict == Verdict::Fail);
  CHECK(outside.trace[2].constant >= 2.0 * outside.trace[1].constant);
}

TEST_CASE("a1 for power weights") {
  const Grid g{1, 8.0, 256};
  CHECK(a1_constant(sample_weight(WeightSpec::power(-0.5), 0, g), g.finest_level() - 2).verdict == Verdict::Pass);
  CHECK(a1_constant(sample_weight(WeightSpec::power(1.0), 0, g), g.finest_level() - 2).verdict == Verdict::Fail);
}

TEST_CASE("ap estimate grows with depth") {
  const Grid g{1, 8.0, 1024};
  const auto w = sample_weight(WeightSpec::power(0.8), 0, g);
  double prev = 0.0;
  for (int depth = 0; depth <= g.finest_level(); ++depth) {
    const double c = ap_constant(w, 2.0, depth, {1, 4}).constant;
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("ap properties") {
  const Grid g{1, 8.0, 256};
  const auto flat = ap_properties_check(GridFunction::constant(g, 2.0), 2.0, 4.0, 4);
  CHECK(flat.ap == doctest::Approx(1.0));
  CHECK(flat.aq_over_ap <= 1.0 + 1e-12);
  CHECK(flat.duality_defect <= 1e-12);
  CHECK(flat.doubling_over_ap <= 1.0 + 1e-12);
  CHECK(flat.dilated_ap == doctest::Approx(1.0));

  const auto pw = ap_properties_check(sample_weight(WeightSpec::power(0.5), 0, g), 2.0, 4.0, 4);
  CHECK(std::isfinite(pw.dual_ap));
  CHECK(pw.dual_ap < 10.0);
  // A_2 is symmetric under w -> 1/w
  CHECK(pw.duality_defect <= 1e-9);
  CHECK(pw.aq_over_ap <= 1.0 + 1e-12);
  CHECK(pw.doubling_over_ap <= 1.0 + 1e-12);
  // |lambda x|^{1/2} is a constant multiple of |x|^{1/2}
  CHECK(pw.dilated_ap == doctest::Approx(pw.ap).epsilon(0.05));
}

TEST_CASE("cube weight norms") {
  const Grid g{1, 8.0, 1024};
  const auto one = WeightSequence::from_spec(WeightSpec::constant(1.0), 2.0, g, 2);
  CHECK(cube_weight_norm(one, 0, {0, {0, 0}, 1}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cube_weight_norm(one, 1, {1, {3, 0}, 1}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  const auto lin = WeightSequence::from_spec(WeightSpec::power(1.0), 1.0, g, 0);
  CHECK(cube_weight_norm(lin, 0, {0, {0, 0}, 1}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("x class of geometric sequences") {
  const Grid g{1, 8.0, 1024};
  const double s = 0.75;
  const auto t = WeightSequence::from_spec(WeightSpec::geometric(s, WeightSpec::constant(1.0)), 2.0, g, 6);
  XClassParams xp;
  xp.alpha1 = xp.alpha2 = s;
  const auto exact = xclass_check(t, xp, 6);
  CHECK(exact.c1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.c2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.verdict == Verdict::Pass);

  // smaller alpha1: the ratio 2^{(s - alpha1)(j - k)} stays below 1
  xp.alpha1 = s - 0.5;
  const auto loose = xclass_check(t, xp, 6);
  CHECK(loose.c1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(loose.verdict == Verdict::Pass);

  xp.alpha1 = s;
  xp.alpha2 = s - 1.5;
  const auto low = xclass_check(t, xp, 6);
  CHECK(low.verdict == Verdict::Fail);
  CHECK(low.alpha_order_violated);
}

TEST_CASE("x dependence cancels in C2") {
  const Grid g{1, 8.0, 512};
  const double s = 1.0;
  XClassParams xp;
  xp.alpha1 = xp.alpha2 = s;
  const auto plain = xclass_check(WeightSequence::from_spec(WeightSpec::geometric(s, WeightSpec::constant(1.0)), 2.0, g, 5), xp, 5);
  const auto shaped =
      xclass_check(WeightSequence::from_spec(WeightSpec::geometric(s, WeightSpec::shifted_power({0.3, 0}, 0.4)), 2.0, g, 5), xp, 5);
  CHECK(shaped.c2 == doctest::Approx(plain.c2).epsilon(1e-10));
}

TEST_CASE("admissible sequences") {
  const Grid g{1, 8.0, 512};
  const auto t = WeightSequence::from_spec(WeightSpec::admissible(1.0, 1.0, 1.0), 2.0, g, 4);
  XClassParams xp;
  xp.alpha1 = 1.0 - 0.5;
  xp.alpha2 = 1.0 + 0.5;
  CHECK(xclass_check(t, xp, 4).verdict == Verdict::Pass);
}

TEST_CASE("weight sequences") {
  const Grid g{1, 4.0, 64};
  const auto t = WeightSequence::from_spec(WeightSpec::geometric(1.0, WeightSpec::power(0.5)), 2.0, g, 3);
  CHECK(t.k_max() == 3);
  CHECK(t.evaluate(2, {4.0, 0}) == doctest::Approx(8.0));
  const auto fine = t.resampled(g.refined(2));
  CHECK(fine.level(3).at(0) == doctest::Approx(8.0 * std::sqrt(4.0 - 0.5 * fine.grid().spacing())));
  CHECK_THROWS_AS(t.level(4), Error);
}

}  // TEST_SUITE
