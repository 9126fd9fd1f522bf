#include "dilatest/space.hpp"

#include <cmath>

#include "dilatest/error.hpp"
#include "dilatest/weights.hpp"

namespace dilatest {

double SpaceParams::sigma1() const { return sigma1_of(theta, p); }

void SpaceParams::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidExponent, "p must lie in [1, inf)");
  if (!(q >= 1.0) || !std::isfinite(q)) throw Error(ErrorKind::InvalidExponent, "q must lie in [1, inf)");
  if (!(theta >= 1.0) || theta > p) throw Error(ErrorKind::InvalidExponent, "theta must lie in [1, p]");
  if (!(sigma2 >= p)) throw Error(ErrorKind::InvalidExponent, "sigma2 must be >= p");
  if (M < 1) throw Error(ErrorKind::InvalidExponent, "difference order M must be >= 1");
}

std::vector<std::string> SpaceParams::warnings() const {
  std::vector<std::string> out;
  if (!(alpha1 > 0.0 && alpha1 <= alpha2 && alpha2 < M))
    out.push_back("alpha = (" + std::to_string(alpha1) + ", " + std::to_string(alpha2) +
                  ") violates 0 < alpha1 <= alpha2 < M");
  if (theta == p) out.push_back("theta == p gives sigma1 = inf");
  return out;
}

}  // namespace dilatest
