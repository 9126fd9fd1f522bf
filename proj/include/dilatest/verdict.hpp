#pragma once

#include <span>
#include <string_view>

namespace dilatest {

enum class Verdict { Pass, Fail, Inconclusive, Divergent };

std::string_view to_string(Verdict v);

/// Plateau / blow-up classification of a running sup recorded over successive
/// refinement steps:
///   Fail         last two steps each grew by >= 2x
///   Pass         last step changed by < 10 %
///   Inconclusive anything else, or fewer than two entries
Verdict classify_refinement(std::span<const double> trace);

inline constexpr double kPlateauTolerance = 0.10;
inline constexpr double kBlowupFactor = 2.0;

}  // namespace dilatest
