#include "dilatest/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "dilatest/error.hpp"
#include "dilatest/lp_fourier.hpp"
#include "dilatest/maximal.hpp"
#include "dilatest/norms.hpp"
#include "dilatest/parallel.hpp"

namespace dilatest::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ConfigError, path + ": " + what);
}

const Json* find(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double real_or(const Json& j, const char* key, double fallback, const std::string& path) {
  const Json* v = find(j, key);
  return v ? parse_real(*v, path + "." + key) : fallback;
}

int int_or(const Json& j, const char* key, int fallback, const std::string& path) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) bad(path + "." + key, "expected an integer");
  return v->get<int>();
}

bool bool_or(const Json& j, const char* key, bool fallback, const std::string& path) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) bad(path + "." + key, "expected true or false");
  return v->get<bool>();
}

std::string string_or(const Json& j, const char* key, const std::string& fallback, const std::string& path) {
  const Json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) bad(path + "." + key, "expected a string");
  return v->get<std::string>();
}

Point parse_point(const Json& j, const std::string& path) {
  if (j.is_number()) return Point{j.get<double>(), 0.0};
  if (!j.is_array() || j.empty() || j.size() > 2) bad(path, "expected a number or an array of 1-2 numbers");
  Point x{0.0, 0.0};
  for (std::size_t a = 0; a < j.size(); ++a) x[a] = parse_real(j[a], path + "[" + std::to_string(a) + "]");
  return x;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json cube_json(const DyadicCube& c) {
  Json j = Json::object();
  j["level"] = c.level;
  j["index"] = c.dim == 1 ? Json::array({c.index[0]}) : Json::array({c.index[0], c.index[1]});
  return j;
}

Json meta(const RunConfig& c, int k_max, int depth) {
  Json m = Json::object();
  m["L"] = c.grid.half_width;
  m["N"] = c.grid.n;
  m["dim"] = c.grid.dim;
  m["K_max"] = k_max;
  m["depth"] = depth;
  m["seed"] = c.seed;
  return m;
}

const WeightSpec& need_weights(const RunConfig& c) {
  if (!c.weights) bad("weights", "required by command '" + c.command + "'");
  return *c.weights;
}

Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Verdict v) { return v == Verdict::Pass ? 0 : v == Verdict::Fail ? 2 : 1; };
  return rank(a) >= rank(b) ? a : b;
}

int default_depth(const Grid& g) { return std::max(g.coarsest_level(), g.finest_level() - 2); }

// ---------------------------------------------------------------- commands

Report run_norm(const RunConfig& c) {
  Report r;
  const GridFunction f = GridFunction::sample(c.grid, make_fixture(c.function, c.grid.dim));
  const int K = resolve_k_max(c.space, c.grid);
  const auto ru = ResolutionOfUnity::build(c.grid, K);
  const auto t = WeightSequence::from_spec(need_weights(c), c.space.p, c.grid, K);
  const NormReport d = diff_norm_report(f, t, c.space);
  const NormReport s = star_norm_report(f, t, c.space);
  const double fourier = fourier_norm(f, t, c.space, ru);
  Json res = Json::object();
  res["fourier_norm"] = number(fourier);
  res["fourier_k_max"] = ru.k_max();
  res["diff_norm"] = number(d.value);
  res["ltilde_norm"] = number(d.zero_order);
  res["diff_tail_fraction"] = number(d.tail_fraction);
  res["diff_boundary_fraction"] = number(d.boundary_fraction);
  res["star_norm"] = number(s.value);
  res["star_zero_order"] = number(s.zero_order);
  res["star_boundary_fraction"] = number(s.boundary_fraction);
  res["unreliable"] = d.unreliable || s.unreliable;
  const bool finite = std::isfinite(fourier) && std::isfinite(d.value) && std::isfinite(s.value);
  r.verdict = finite ? Verdict::Pass : Verdict::Fail;
  r.body["results"] = res;
  r.body["verdicts"] = Json{{"norms_finite", std::string(to_string(r.verdict))}};
  r.body["meta"] = meta(c, d.k_max, c.depth);
  r.table.header = {"quantity", "value"};
  for (const char* key : {"fourier_norm", "diff_norm", "ltilde_norm", "star_norm"}) r.table.rows.push_back({key, res[key]});
  return r;
}

Report run_ap(const RunConfig& c) {
  Report r;
  const Json& blk = c.extra.contains("ap") ? c.extra["ap"] : Json::object();
  const double p = real_or(blk, "p", c.space.p, "ap");
  const bool a1 = bool_or(blk, "a1", false, "ap");
  ApOptions opt;
  opt.refinements = int_or(blk, "refinements", opt.refinements, "ap");
  opt.refine_factor = int_or(blk, "refine_factor", opt.refine_factor, "ap");
  const int depth = c.depth >= 0 ? c.depth : default_depth(c.grid);
  const GridFunction gamma = sample_weight(need_weights(c), 0, c.grid);
  const ApReport rep = a1 ? a1_constant(gamma, depth, opt) : ap_constant(gamma, p, depth, opt);
  Json res = Json::object();
  res["class"] = a1 ? "A1" : "Ap";
  res["p"] = number(p);
  res["constant"] = number(rep.constant);
  res["argmax"] = cube_json(rep.argmax.cube);
  res["argmax_shift"] = Json::array({rep.argmax.shift[0], rep.argmax.shift[1]});
  res["levels"] = Json::array({rep.level_min, rep.level_max});
  res["cubes_scanned"] = rep.cubes_scanned;
  res["boundary_cubes"] = rep.boundary_cubes;
  res["scan_family"] = "dyadic plus one-third shifted cubes";
  Json trace = Json::array();
  for (const auto& s : rep.trace) {
    trace.push_back(Json{{"N", s.n}, {"depth", s.depth}, {"constant", number(s.constant)}});
    r.table.rows.push_back({s.n, s.depth, number(s.constant)});
  }
  res["trace"] = trace;
  r.table.header = {"N", "depth", "constant"};
  r.verdict = rep.verdict;
  r.body["results"] = res;
  r.body["verdicts"] = Json{{a1 ? "a1" : "ap", std::string(to_string(rep.verdict))}};
  r.body["meta"] = meta(c, -1, depth);
  return r;
}

Report run_xclass(const RunConfig& c) {
  Report r;
  const Json& blk = c.extra.contains("xclass") ? c.extra["xclass"] : Json::object();
  XClassParams xp;
  xp.p = c.space.p;
  xp.alpha1 = real_or(blk, "alpha1", c.space.alpha1, "xclass");
  xp.alpha2 = real_or(blk, "alpha2", c.space.alpha2, "xclass");
  xp.sigma1 = real_or(blk, "sigma1", c.space.sigma1(), "xclass");
  xp.sigma2 = real_or(blk, "sigma2", c.space.sigma2, "xclass");
  const int depth = c.depth >= 0 ? c.depth : 4;
  const auto t = WeightSequence::from_spec(need_weights(c), xp.p, c.grid, depth);
  const XClassReport rep = xclass_check(t, xp, depth);
  Json res = Json::object();
  res["c1"] = number(rep.c1);
  res["c2"] = number(rep.c2);
  res["alpha1"] = xp.alpha1;
  res["alpha2"] = xp.alpha2;
  res["sigma1"] = number(xp.sigma1);
  res["sigma2"] = number(xp.sigma2);
  res["alpha_order_violated"] = rep.alpha_order_violated;
  res["argmax1"] = Json{{"k", rep.argmax1.k}, {"j", rep.argmax1.j}, {"cube", cube_json(rep.argmax1.cube.cube)}};
  res["argmax2"] = Json{{"k", rep.argmax2.k}, {"j", rep.argmax2.j}, {"cube", cube_json(rep.argmax2.cube.cube)}};
  res["cubes_scanned"] = rep.cubes_scanned;
  Json c1 = Json::array(), c2 = Json::array();
  for (std::size_t K = 0; K < rep.c1_trace.size(); ++K) {
    c1.push_back(number(rep.c1_trace[K]));
    c2.push_back(number(rep.c2_trace[K]));
    r.table.rows.push_back({int(K), number(rep.c1_trace[K]), number(rep.c2_trace[K])});
  }
  res["c1_trace"] = c1;
  res["c2_trace"] = c2;
  r.table.header = {"K", "c1", "c2"};
  r.verdict = rep.verdict;
  r.body["results"] = res;
  r.body["verdicts"] = Json{{"xclass", std::string(to_string(rep.verdict))}};
  r.body["meta"] = meta(c, depth, depth);
  return r;
}

Report run_dilate(const RunConfig& c) {
  Report r;
  const GridFunction f = GridFunction::sample(c.grid, make_fixture(c.function, c.grid.dim));
  const int K = resolve_k_max(c.space, c.grid);
  const auto t = WeightSequence::from_spec(need_weights(c), c.space.p, c.grid, K);
  const TheoremReport rep = verify_theorem(f, t, c.space, c.lambdas, c.norm);
  Json res = Json::object();
  Json rows = Json::array();
  for (const auto& d : rep.rows) {
    rows.push_back(Json{{"lambda", d.lambda},
                        {"i", d.i},
                        {"H", number(d.H)},
                        {"norm_before", number(d.norm_before)},
                        {"norm_after", number(d.norm_after)},
                        {"bound_shape", number(d.bound_shape)},
                        {"observed_c", number(d.observed_c)},
                        {"naive_c", number(d.naive_c)},
                        {"clipped_fraction", number(d.clipped_fraction)}});
    r.table.rows.push_back({d.lambda, d.i, number(d.H), number(d.norm_before), number(d.norm_after), number(d.bound_shape),
                            number(d.observed_c), number(d.naive_c), number(d.clipped_fraction)});
  }
  r.table.header = {"lambda", "i", "H", "norm_before", "norm_after", "bound_shape", "observed_c", "naive_c", "clipped_fraction"};
  res["sweep"] = rows;
  res["spread"] = number(rep.spread);
  res["naive_spread"] = number(rep.naive_spread);
  res["slope"] = number(rep.slope);
  res["expected_classical_slope"] = c.space.alpha2 - c.grid.dim / c.space.p;
  r.verdict = rep.verdict;
  Json verdicts = Json{{"theorem", std::string(to_string(rep.verdict))}};
  if (c.extra.contains("sobolev")) {
    const Json& sb = c.extra["sobolev"];
    const WeightSpec omega = sb.contains("omega") ? parse_weight(sb["omega"], "sobolev.omega") : need_weights(c);
    const double lambda = real_or(sb, "lambda", 2.0, "sobolev");
    const int doublings = int_or(sb, "doublings", 2, "sobolev");
    const SobolevReport so = sobolev_sup_ratio(omega, lambda, c.grid, doublings);
    Json trace = Json::array();
    for (double v : so.trace) trace.push_back(number(v));
    res["sobolev_sup_ratio"] = so.divergent() ? Json("DIVERGENT") : number(so.value);
    res["sobolev_trace"] = trace;
    verdicts["sobolev"] = std::string(to_string(so.verdict));
  }
  r.body["results"] = res;
  r.body["verdicts"] = verdicts;
  r.body["meta"] = meta(c, rep.k_max, c.depth);
  return r;
}

Report run_maximal(const RunConfig& c) {
  Report r;
  const Json& blk = c.extra.contains("maximal") ? c.extra["maximal"] : Json::object();
  const int families = int_or(blk, "families", 20, "maximal");
  const int members = int_or(blk, "members", 3, "maximal");
  const double sigma = real_or(blk, "sigma", 0.5, "maximal");
  const double theta = real_or(blk, "theta", 1.1, "maximal");
  const double p = c.space.p, q = c.space.q;
  if (families < 1 || members < 1) bad("maximal", "families and members must be positive");

  const Grid fine = c.grid.refined(2);
  std::optional<WeightSequence> t, t_fine;
  Verdict pre = Verdict::Pass;
  Json res = Json::object();
  if (c.weights) {
    t = WeightSequence::from_spec(*c.weights, p, c.grid, members - 1);
    t_fine = t->resampled(fine);
    const auto mp = maximal_precondition(*t, theta, members);
    pre = mp.verdict;
    Json consts = Json::array();
    for (double v : mp.constants) consts.push_back(number(v));
    res["precondition_constants"] = consts;
  }
  const bool weighted = t && pre != Verdict::Fail;
  const std::size_t nf = std::size_t(families);
  std::vector<double> fs(nf, 0.0), fs2(nf, 0.0), wm(nf, 0.0), wm2(nf, 0.0);
  parallel_for(std::size_t(families), [&](std::size_t fam) {
    const auto forms = random_family(c.seed + fam, members, c.grid.dim, c.grid.half_width);
    std::vector<GridFunction> coarse, refined;
    for (const auto& cf : forms) {
      coarse.push_back(GridFunction::sample(c.grid, cf));
      refined.push_back(GridFunction::sample(fine, cf));
    }
    fs[fam] = fs_inequality_ratio(coarse, p, q, sigma);
    fs2[fam] = fs_inequality_ratio(refined, p, q, sigma);
    if (weighted) {
      wm[fam] = weighted_maximal_ratio(coarse, *t, p, q, theta, false);
      wm2[fam] = weighted_maximal_ratio(refined, *t_fine, p, q, theta, false);
    }
  });
  double fs_max = 0, wm_max = 0, change = 0;
  Json rows = Json::array();
  for (std::size_t fam = 0; fam < fs.size(); ++fam) {
    fs_max = std::max({fs_max, fs[fam], fs2[fam]});
    wm_max = std::max({wm_max, wm[fam], wm2[fam]});
    change = std::max(change, std::abs(fs2[fam] - fs[fam]) / fs[fam]);
    if (weighted) change = std::max(change, std::abs(wm2[fam] - wm[fam]) / wm[fam]);
    rows.push_back(Json{{"family", fam}, {"fs_ratio", fs[fam]}, {"fs_ratio_2N", fs2[fam]}, {"weighted_ratio", wm[fam]},
                        {"weighted_ratio_2N", wm2[fam]}});
    r.table.rows.push_back({int(fam), fs[fam], fs2[fam], wm[fam], wm2[fam]});
  }
  r.table.header = {"family", "fs_ratio", "fs_ratio_2N", "weighted_ratio", "weighted_ratio_2N"};
  res["families"] = rows;
  res["fs_ratio_max"] = fs_max;
  res["weighted_ratio_max"] = wm_max;
  res["max_relative_change_2N"] = change;
  res["sigma"] = sigma;
  res["theta"] = theta;
  const Verdict stable = change < kPlateauTolerance ? Verdict::Pass : Verdict::Inconclusive;
  r.verdict = pre == Verdict::Fail ? Verdict::Fail : worst(stable, pre);
  r.body["results"] = res;
  r.body["verdicts"] = Json{{"refinement_stable", std::string(to_string(stable))}, {"precondition", std::string(to_string(pre))}};
  r.body["meta"] = meta(c, members - 1, c.depth);
  return r;
}

Report run_equiv(const RunConfig& c) {
  Report r;
  const Json& blk = c.extra.contains("equiv") ? c.extra["equiv"] : Json::object();
  const double max_spread = real_or(blk, "max_spread", 4.0, "equiv");
  const int K = resolve_k_max(c.space, c.grid);
  const auto ru = ResolutionOfUnity::build(c.grid, K);
  const auto t = WeightSequence::from_spec(need_weights(c), c.space.p, c.grid, K);
  const auto family = equivalence_family();
  std::vector<double> d(family.size()), s(family.size()), fo(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const GridFunction f = GridFunction::sample(c.grid, make_fixture(family[i], c.grid.dim));
    d[i] = diff_norm(f, t, c.space);
    s[i] = star_norm(f, t, c.space);
    fo[i] = fourier_norm(f, t, c.space, ru);
  });
  std::vector<double> sd, fd;
  Json rows = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    sd.push_back(s[i] / d[i]);
    fd.push_back(fo[i] / d[i]);
    rows.push_back(Json{{"function", family[i].name}, {"diff", d[i]}, {"star", s[i]}, {"fourier", fo[i]},
                        {"star_over_diff", sd.back()}, {"fourier_over_diff", fd.back()}});
    r.table.rows.push_back({family[i].name, d[i], s[i], fo[i], sd.back(), fd.back()});
  }
  r.table.header = {"function", "diff", "star", "fourier", "star_over_diff", "fourier_over_diff"};
  auto bracket = [](const std::vector<double>& v) {
    return Json::array({*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end())});
  };
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  Json res = Json::object();
  res["functions"] = rows;
  res["star_over_diff_bracket"] = bracket(sd);
  res["fourier_over_diff_bracket"] = bracket(fd);
  res["star_over_diff_spread"] = spread(sd);
  res["fourier_over_diff_spread"] = spread(fd);
  res["max_spread"] = max_spread;
  r.verdict = spread(sd) <= max_spread && spread(fd) <= max_spread ? Verdict::Pass : Verdict::Fail;
  r.body["results"] = res;
  r.body["verdicts"] = Json{{"equivalence", std::string(to_string(r.verdict))}};
  r.body["meta"] = meta(c, K, c.depth);
  return r;
}

void emit_value(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(std::size_t(indent) * 2, ' ');
  const std::string pad_in(std::size_t(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad_in << Json(it.key()).dump() << ": ";
        emit_value(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad_in;
        emit_value(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << number(v).dump();
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    return buf;
  }
  return j.dump();
}

}  // namespace

double parse_real(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  bad(path, "expected a number or \"inf\"");
}

WeightSpec parse_weight(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object with a \"type\" field");
  const std::string type = string_or(j, "type", "", path);
  if (type == "constant") {
    const double c = real_or(j, "c", 1.0, path);
    if (!(c > 0.0)) bad(path + ".c", "must be positive");
    return WeightSpec::constant(c);
  }
  if (type == "power") return WeightSpec::power(real_or(j, "beta", 0.0, path));
  if (type == "shifted_power") {
    const Point x0 = find(j, "x0") ? parse_point(j["x0"], path + ".x0") : Point{0.0, 0.0};
    return WeightSpec::shifted_power(x0, real_or(j, "delta", 0.0, path));
  }
  if (type == "geometric") {
    if (!find(j, "base")) bad(path + ".base", "required for geometric weights");
    return WeightSpec::geometric(real_or(j, "s", 0.0, path), parse_weight(j["base"], path + ".base"),
                                 bool_or(j, "dilated", false, path));
  }
  if (type == "admissible")
    return WeightSpec::admissible(real_or(j, "s", 0.0, path), real_or(j, "b", 0.0, path), real_or(j, "c", 0.0, path));
  if (type == "product") {
    const Json* f = find(j, "factors");
    if (!f || !f->is_array() || f->empty()) bad(path + ".factors", "expected a non-empty array");
    std::vector<WeightSpec> factors;
    for (std::size_t i = 0; i < f->size(); ++i) factors.push_back(parse_weight((*f)[i], path + ".factors[" + std::to_string(i) + "]"));
    return WeightSpec::product(std::move(factors));
  }
  bad(path + ".type", "unknown weight type '" + type + "' (constant, power, shifted_power, geometric, admissible, product)");
}

RunConfig parse_config(const Json& j, const std::string& command) {
  if (!j.is_object()) bad("<root>", "config must be a JSON object");
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    bad("command", "unknown command '" + command + "'");
  RunConfig c;
  c.command = command;

  const Json grid = j.value("grid", Json::object());
  c.grid.dim = int_or(grid, "dim", 1, "grid");
  c.grid.half_width = real_or(grid, "L", 8.0, "grid");
  c.grid.n = int_or(grid, "N", 256, "grid");
  try {
    c.grid.validate();
  } catch (const Error& e) {
    bad("grid", e.what());
  }

  const Json space = j.value("space", Json::object());
  const std::string kind = string_or(space, "kind", "B", "space");
  if (kind != "B" && kind != "F") bad("space.kind", "expected \"B\" or \"F\"");
  c.space.kind = kind == "B" ? SpaceKind::B : SpaceKind::F;
  c.space.p = real_or(space, "p", 2.0, "space");
  c.space.q = real_or(space, "q", 2.0, "space");
  c.space.M = int_or(space, "M", 2, "space");
  if (const Json* a = find(space, "alpha")) {
    if (!a->is_array() || a->size() != 2) bad("space.alpha", "expected [alpha1, alpha2]");
    c.space.alpha1 = parse_real((*a)[0], "space.alpha[0]");
    c.space.alpha2 = parse_real((*a)[1], "space.alpha[1]");
  }
  c.space.theta = real_or(space, "theta", 1.0, "space");
  c.space.sigma2 = real_or(space, "sigma2", c.space.p, "space");
  c.space.k_max = int_or(space, "k_max", -1, "space");
  try {
    c.space.validate();
  } catch (const Error& e) {
    bad("space", e.what());
  }

  if (const Json* w = find(j, "weights")) c.weights = parse_weight(*w, "weights");

  const Json fn = j.value("function", Json::object());
  c.function.name = string_or(fn, "name", "gaussian", "function");
  c.function.width = real_or(fn, "width", c.function.width, "function");
  if (const Json* ctr = find(fn, "center")) c.function.center = parse_point(*ctr, "function.center");
  c.function.freq = real_or(fn, "freq", c.function.freq, "function");
  c.function.a = real_or(fn, "a", c.function.a, "function");
  c.function.b = real_or(fn, "b", c.function.b, "function");
  c.function.eps = real_or(fn, "eps", c.function.eps, "function");
  c.function.value = real_or(fn, "value", c.function.value, "function");
  c.function.amplitude = real_or(fn, "amplitude", c.function.amplitude, "function");
  make_fixture(c.function, c.grid.dim);

  if (const Json* ls = find(j, "lambda_list")) {
    if (!ls->is_array() || ls->empty()) bad("lambda_list", "expected a non-empty array");
    c.lambdas.clear();
    for (std::size_t i = 0; i < ls->size(); ++i) {
      const double v = parse_real((*ls)[i], "lambda_list[" + std::to_string(i) + "]");
      if (!(v >= 1.0) || !std::isfinite(v)) bad("lambda_list[" + std::to_string(i) + "]", "lambda must be finite and >= 1");
      c.lambdas.push_back(v);
    }
  }
  c.depth = int_or(j, "depth", -1, "");
  if (const Json* s = find(j, "seed")) {
    if (!s->is_number_unsigned()) bad("seed", "expected a non-negative integer");
    c.seed = s->get<std::uint64_t>();
  }
  const std::string norm = string_or(j, "norm", "diff", "");
  if (norm == "diff") c.norm = NormChoice::Diff;
  else if (norm == "star") c.norm = NormChoice::Star;
  else if (norm == "fourier") c.norm = NormChoice::Fourier;
  else bad("norm", "expected \"diff\", \"star\" or \"fourier\"");

  for (const char* key : {"ap", "xclass", "maximal", "equiv", "sobolev"})
    if (const Json* b = find(j, key)) {
      if (!b->is_object()) bad(key, "expected an object");
      c.extra[key] = *b;
    }
  c.echo = j;
  c.echo["command"] = command;
  return c;
}

Report run(const RunConfig& config) {
  Report r;
  try {
    if (config.command == "norm") r = run_norm(config);
    else if (config.command == "ap") r = run_ap(config);
    else if (config.command == "xclass") r = run_xclass(config);
    else if (config.command == "dilate") r = run_dilate(config);
    else if (config.command == "maximal") r = run_maximal(config);
    else r = run_equiv(config);
  } catch (const Error& e) {
    r = Report{};
    r.failed = true;
    r.body["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    r.body["results"] = Json::object();
    r.body["verdicts"] = Json::object();
    r.body["meta"] = meta(config, -1, config.depth);
  }
  r.body["config"] = config.echo;
  return r;
}

std::string emit_json(const Json& j) {
  std::ostringstream os;
  emit_value(os, j, 0);
  os << "\n";
  return os.str();
}

std::string emit_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
  return os.str();
}

int exit_code(const Report& r) {
  if (r.failed) return 3;
  switch (r.verdict) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    default: return 2;
  }
}

}  // namespace dilatest::cli
