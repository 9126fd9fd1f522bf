#include "dilatest/fixtures.hpp"

#include <cmath>
#include <random>

#include "dilatest/error.hpp"

namespace dilatest {

ClosedForm make_fixture(const FixtureSpec& s, int dim) {
  const double amp = s.amplitude;
  if (s.name == "gaussian") {
    return {"gaussian", [s, dim, amp](const Point& x) {
              double r2 = 0.0;
              for (int a = 0; a < dim; ++a) r2 += (x[a] - s.center[a]) * (x[a] - s.center[a]);
              return amp * std::exp(-r2 / (2.0 * s.width * s.width));
            }};
  }
  if (s.name == "bump") {
    return {"bump", [s, dim, amp](const Point& x) {
              double v = amp;
              for (int a = 0; a < dim; ++a) {
                const double u = (x[a] - s.center[a]) / s.width;
                if (std::abs(u) >= 1.0) return 0.0;
                v *= std::exp(1.0 - 1.0 / (1.0 - u * u));
              }
              return v;
            }};
  }
  if (s.name == "sine_packet") {
    return {"sine_packet", [s, dim, amp](const Point& x) {
              double r2 = 0.0;
              for (int a = 0; a < dim; ++a) r2 += (x[a] - s.center[a]) * (x[a] - s.center[a]);
              return amp * std::sin(s.freq * (x[0] - s.center[0])) * std::exp(-r2 / (2.0 * s.width * s.width));
            }};
  }
  if (s.name == "mollified_indicator") {
    return {"mollified_indicator", [s, dim, amp](const Point& x) {
              double v = amp;
              for (int a = 0; a < dim; ++a) v *= 0.5 * (std::erf((x[a] - s.a) / s.eps) - std::erf((x[a] - s.b) / s.eps));
              return v;
            }};
  }
  if (s.name == "constant") return {"constant", [c = s.value](const Point&) { return c; }};
  if (s.name == "zero") return {"zero", [](const Point&) { return 0.0; }};
  throw Error(ErrorKind::ConfigError, "unknown fixture '" + s.name + "'");
}

std::vector<FixtureSpec> equivalence_family() {
  std::vector<FixtureSpec> out(5);
  out[0].name = "gaussian";
  out[0].width = 0.5;
  out[1].name = "gaussian";
  out[1].width = 1.0;
  out[1].center = {0.5, 0.5};
  out[2].name = "bump";
  out[2].width = 1.5;
  out[3].name = "sine_packet";
  out[3].freq = 3.0;
  out[3].width = 0.8;
  out[4].name = "mollified_indicator";
  out[4].a = -1.0;
  out[4].b = 1.0;
  out[4].eps = 0.3;
  return out;
}

std::vector<ClosedForm> random_family(std::uint64_t seed, int count, int dim, double half_width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-0.6 * half_width, 0.6 * half_width);
  std::uniform_real_distribution<double> len(0.2, 2.0);
  std::uniform_real_distribution<double> height(0.2, 2.0);
  std::uniform_real_distribution<double> soft(0.05, 0.3);
  std::uniform_int_distribution<int> pieces(1, 3);
  std::vector<ClosedForm> out;
  for (int c = 0; c < count; ++c) {
    std::vector<ClosedForm> terms;
    const int np = pieces(rng);
    for (int j = 0; j < np; ++j) {
      FixtureSpec s;
      s.name = "mollified_indicator";
      s.a = pos(rng);
      s.b = s.a + len(rng);
      s.eps = soft(rng);
      s.amplitude = height(rng);
      terms.push_back(make_fixture(s, dim));
    }
    out.push_back({"random" + std::to_string(c), [terms](const Point& x) {
                     double v = 0.0;
                     for (const auto& t : terms) v += t.fn(x);
                     return v;
                   }});
  }
  return out;
}

}  // namespace dilatest
