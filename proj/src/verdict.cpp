#include "dilatest/verdict.hpp"

#include <cmath>

namespace dilatest {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Divergent: return "DIVERGENT";
  }
  return "INCONCLUSIVE";
}

Verdict classify_refinement(std::span<const double> trace) {
  const std::size_t n = trace.size();
  if (n < 2) return Verdict::Inconclusive;
  auto grew = [&](std::size_t i) { return trace[i] >= kBlowupFactor * trace[i - 1] || std::isinf(trace[i]); };
  if (n >= 3 && grew(n - 1) && grew(n - 2)) return Verdict::Fail;
  const double last = trace[n - 1], prev = trace[n - 2];
  if (std::isfinite(last) && std::isfinite(prev) && std::abs(last - prev) < kPlateauTolerance * std::abs(prev))
    return Verdict::Pass;
  return Verdict::Inconclusive;
}

}  // namespace dilatest
