#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dilatest/dilation.hpp"
#include "dilatest/fixtures.hpp"
#include "dilatest/grid.hpp"
#include "dilatest/space.hpp"
#include "dilatest/verdict.hpp"
#include "dilatest/weights.hpp"

namespace dilatest::cli {

using Json = nlohmann::json;

inline const std::vector<std::string> kCommands{"norm", "ap", "xclass", "dilate", "maximal", "equiv"};

struct RunConfig {
  std::string command;
  Grid grid;
  SpaceParams space;
  std::optional<WeightSpec> weights;
  FixtureSpec function;
  std::vector<double> lambdas{2.0, 4.0, 8.0};
  int depth = -1;
  std::uint64_t seed = 1;
  NormChoice norm = NormChoice::Diff;
  /// Command blocks kept as parsed JSON ("ap", "xclass", "maximal", "equiv", "sobolev").
  Json extra = Json::object();
  /// The normalized config echoed into reports.
  Json echo = Json::object();
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const Json& j, const std::string& command);
WeightSpec parse_weight(const Json& j, const std::string& path);
/// Numbers or the strings "inf" / "-inf".
double parse_real(const Json& j, const std::string& path);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  Json body = Json::object();
  Verdict verdict = Verdict::Inconclusive;
  Table table;
  bool failed = false;
};

/// Runs the command; module errors are caught and serialized into the report.
Report run(const RunConfig& config);

/// Sorted keys, 12 significant digits, non-finite numbers as strings.
std::string emit_json(const Json& j);
std::string emit_csv(const Table& t);

/// 0 PASS, 1 FAIL, 2 INCONCLUSIVE or DIVERGENT, 3 error.
int exit_code(const Report& r);

}  // namespace dilatest::cli
