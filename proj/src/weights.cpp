#include "dilatest/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dilatest/error.hpp"

namespace dilatest {

namespace {

double euclidean(const Point& x, int dim) {
  return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

double eval_raw(const WeightSpec& spec, int k, const Point& x, int dim) {
  struct Visitor {
    int k;
    const Point& x;
    int dim;
    double operator()(const ConstantWeight& w) const { return w.c; }
    double operator()(const PowerWeight& w) const { return std::pow(euclidean(x, dim), w.beta); }
    double operator()(const ShiftedPowerWeight& w) const {
      return std::pow(euclidean(Point{x[0] - w.x0[0], x[1] - w.x0[1]}, dim), w.delta);
    }
    double operator()(const GeometricLevelWeight& w) const {
      const double scale = std::exp2(k * w.s);
      if (!w.dilated) return scale * eval_raw(*w.base, k, x, dim);
      const double shrink = std::ldexp(1.0, -k);
      return scale * eval_raw(*w.base, k, Point{x[0] * shrink, x[1] * shrink}, dim);
    }
    double operator()(const AdmissibleSeqWeight& w) const {
      return std::exp2(w.s * k) * std::pow(1.0 + k, w.b) * std::pow(1.0 + std::log(1.0 + k), w.c);
    }
    double operator()(const ProductWeight& w) const {
      double v = 1.0;
      for (const auto& f : w.factors) v *= eval_raw(f, k, x, dim);
      return v;
    }
  };
  return std::visit(Visitor{k, x, dim}, spec.node);
}

void require_positive(const GridFunction& g, const char* what) {
  for (double v : g.samples())
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NonPositiveValue, std::string(what) + " must be positive and finite");
}

int log2_exact(int factor) {
  int l = 0;
  while ((1 << l) < factor) ++l;
  if ((1 << l) != factor) throw Error(ErrorKind::ConfigError, "refinement factor must be a power of two");
  return l;
}

void check_depth(const Grid& g, int depth) {
  if (depth > g.finest_level())
    throw Error(ErrorKind::ResolutionExceeded, "scan depth " + std::to_string(depth) + " exceeds the finest resolvable level " +
                                                   std::to_string(g.finest_level()));
}

std::vector<double> powered(const GridFunction& g, double e) {
  std::vector<double> out(g.samples().size());
  std::transform(g.samples().begin(), g.samples().end(), out.begin(), [e](double v) { return std::pow(v, e); });
  return out;
}

struct ScanResult {
  double value = 0.0;
  ScannedCube argmax;
  std::size_t cubes = 0;
  std::size_t boundary = 0;
};

ScanResult scan_ap(const GridFunction& gamma, double p, int depth) {
  const Grid& g = gamma.grid();
  check_depth(g, depth);
  require_positive(gamma, "A_p weight");
  const PrefixTable direct(g, gamma.samples());
  const PrefixTable dual(g, powered(gamma, -1.0 / (p - 1.0)));
  ScanResult r;
  r.value = -1.0;
  for (const auto& sc : scan_family(g, g.coarsest_level(), depth)) {
    const double m = sc.box.measure();
    const double v = (direct.integral(sc.box) / m) * std::pow(dual.integral(sc.box) / m, p - 1.0);
    ++r.cubes;
    if (sc.clipped) ++r.boundary;
    if (v > r.value) {
      r.value = v;
      r.argmax = sc;
    }
  }
  return r;
}

ScanResult scan_a1(const GridFunction& gamma, int depth) {
  const Grid& g = gamma.grid();
  check_depth(g, depth);
  require_positive(gamma, "A_1 weight");
  const PrefixTable direct(g, gamma.samples());
  ScanResult r;
  r.value = -1.0;
  for (const auto& sc : scan_family(g, g.coarsest_level(), depth)) {
    const auto [i0, i1] = cell_range(g, sc.box.lo[0], sc.box.hi[0]);
    const auto [j0, j1] = g.dim == 2 ? cell_range(g, sc.box.lo[1], sc.box.hi[1]) : std::pair<int, int>{0, 1};
    if (i0 >= i1 || j0 >= j1) continue;
    double lowest = std::numeric_limits<double>::infinity();
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) lowest = std::min(lowest, gamma.at(i, j));
    const double v = direct.integral(sc.box) / sc.box.measure() / lowest;
    ++r.cubes;
    if (sc.clipped) ++r.boundary;
    if (v > r.value) {
      r.value = v;
      r.argmax = sc;
    }
  }
  return r;
}

template <class Scan>
ApReport refine(const GridFunction& gamma, int depth, const ApOptions& options, Scan&& scan) {
  const int levels_per_step = log2_exact(options.refine_factor);
  ApReport report;
  const int steps = gamma.has_closed_form() ? std::max(1, options.refinements) : 1;
  GridFunction current = gamma;
  for (int s = 0; s < steps; ++s) {
    if (s > 0) current = gamma.resampled(current.grid().refined(options.refine_factor));
    const int d = depth + s * levels_per_step;
    const ScanResult r = scan(current, d);
    report.trace.push_back(RefinementStep{current.grid().n, d, r.value});
    report.constant = r.value;
    report.argmax = r.argmax;
    report.level_min = current.grid().coarsest_level();
    report.level_max = d;
    report.cubes_scanned = r.cubes;
    report.boundary_cubes = r.boundary;
  }
  std::vector<double> values;
  for (const auto& st : report.trace) values.push_back(st.constant);
  report.verdict = classify_refinement(values);
  return report;
}

}  // namespace

WeightSpec WeightSpec::geometric(double s, WeightSpec base, bool dilated) {
  return {GeometricLevelWeight{s, std::make_shared<const WeightSpec>(std::move(base)), dilated}};
}

bool WeightSpec::constant_in_x() const {
  struct Visitor {
    bool operator()(const ConstantWeight&) const { return true; }
    bool operator()(const PowerWeight& w) const { return w.beta == 0.0; }
    bool operator()(const ShiftedPowerWeight& w) const { return w.delta == 0.0; }
    bool operator()(const GeometricLevelWeight& w) const { return w.base->constant_in_x(); }
    bool operator()(const AdmissibleSeqWeight&) const { return true; }
    bool operator()(const ProductWeight& w) const {
      return std::all_of(w.factors.begin(), w.factors.end(), [](const WeightSpec& f) { return f.constant_in_x(); });
    }
  };
  return std::visit(Visitor{}, node);
}

std::string WeightSpec::describe() const {
  struct Visitor {
    std::string operator()(const ConstantWeight& w) const { return "const(" + std::to_string(w.c) + ")"; }
    std::string operator()(const PowerWeight& w) const { return "|x|^" + std::to_string(w.beta); }
    std::string operator()(const ShiftedPowerWeight& w) const {
      std::ostringstream os;
      os << "|x-(" << w.x0[0] << "," << w.x0[1] << ")|^" << w.delta;
      return os.str();
    }
    std::string operator()(const GeometricLevelWeight& w) const {
      return "2^{k*" + std::to_string(w.s) + "}*" + w.base->describe() + (w.dilated ? "(2^-k x)" : "");
    }
    std::string operator()(const AdmissibleSeqWeight& w) const {
      return "admissible(" + std::to_string(w.s) + "," + std::to_string(w.b) + "," + std::to_string(w.c) + ")";
    }
    std::string operator()(const ProductWeight& w) const {
      std::string s;
      for (const auto& f : w.factors) s += (s.empty() ? "" : "*") + f.describe();
      return s;
    }
  };
  return std::visit(Visitor{}, node);
}

double eval_weight(const WeightSpec& spec, int k, const Point& x, int dim) {
  const double v = eval_raw(spec, k, x, dim);
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NonPositiveValue, "weight " + spec.describe() + " is not positive and finite");
  return v;
}

GridFunction sample_weight(const WeightSpec& spec, int k, const Grid& grid) {
  const int dim = grid.dim;
  return GridFunction::sample(grid, ClosedForm{spec.describe() + "@k=" + std::to_string(k),
                                               [spec, k, dim](const Point& x) { return eval_weight(spec, k, x, dim); }});
}

WeightSequence WeightSequence::from_spec(const WeightSpec& spec, double p, const Grid& grid, int k_max) {
  if (k_max < 0) throw Error(ErrorKind::ConfigError, "k_max must be non-negative");
  WeightSequence t;
  t.p_ = p;
  t.spec_ = spec;
  for (int k = 0; k <= k_max; ++k) t.levels_.push_back(sample_weight(spec, k, grid));
  return t;
}

WeightSequence WeightSequence::from_levels(std::vector<GridFunction> levels, double p) {
  if (levels.empty()) throw Error(ErrorKind::MissingLevels, "weight sequence needs at least level 0");
  for (const auto& l : levels) {
    if (!(l.grid() == levels.front().grid())) throw Error(ErrorKind::ConfigError, "weight levels must share a grid");
    require_positive(l, "weight level");
  }
  WeightSequence t;
  t.p_ = p;
  t.levels_ = std::move(levels);
  return t;
}

const GridFunction& WeightSequence::level(int k) const {
  if (k < 0 || k > k_max()) throw Error(ErrorKind::MissingLevels, "weight level " + std::to_string(k) + " not available");
  return levels_[std::size_t(k)];
}

double WeightSequence::evaluate(int k, const Point& x) const {
  if (spec_) return eval_weight(*spec_, k, x, grid().dim);
  return level(k).interpolate(x);
}

WeightSequence WeightSequence::resampled(const Grid& grid) const {
  if (spec_) return from_spec(*spec_, p_, grid, k_max());
  std::vector<GridFunction> out;
  for (const auto& l : levels_) out.push_back(l.resampled(grid));
  return from_levels(std::move(out), p_);
}

double conjugate(double p) {
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidExponent, "conjugate exponent needs 1 < p < inf");
  return p / (p - 1.0);
}

double sigma1_of(double theta, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidExponent, "sigma1 needs 1 < p < inf");
  if (!(theta >= 1.0) || theta > p) throw Error(ErrorKind::InvalidExponent, "sigma1 needs 1 <= theta <= p");
  if (theta == p) return std::numeric_limits<double>::infinity();
  return theta * p / (p - theta);
}

ApReport ap_constant(const GridFunction& gamma, double p, int depth, const ApOptions& options) {
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidExponent, "A_p needs 1 < p < inf");
  return refine(gamma, depth, options, [p](const GridFunction& g, int d) { return scan_ap(g, p, d); });
}

ApReport a1_constant(const GridFunction& gamma, int depth, const ApOptions& options) {
  return refine(gamma, depth, options, [](const GridFunction& g, int d) { return scan_a1(g, d); });
}

ApPropertiesReport ap_properties_check(const GridFunction& gamma, double p, double lambda, int depth, std::uint64_t seed,
                                       int pairs) {
  if (!(p > 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidExponent, "A_p properties need 1 < p < inf");
  if (!(lambda > 0.0)) throw Error(ErrorKind::ConfigError, "dilation factor must be positive");
  const Grid& g = gamma.grid();
  ApPropertiesReport rep;
  rep.ap = scan_ap(gamma, p, depth).value;
  rep.aq = scan_ap(gamma, 2.0 * p, depth).value;
  rep.aq_over_ap = rep.aq / rep.ap;

  const double pc = conjugate(p);
  const GridFunction dual = gamma.map([pc](double v) { return std::pow(v, 1.0 - pc); }, "^(1-p')");
  rep.dual_ap = scan_ap(dual, pc, depth).value;
  const double expected = std::pow(rep.ap, pc - 1.0);
  rep.duality_defect = std::abs(rep.dual_ap - expected) / expected;

  const PrefixTable direct(g, gamma.samples());
  std::vector<ScannedCube> family;
  for (const auto& sc : scan_family(g, g.coarsest_level(), depth))
    if (!sc.clipped) family.push_back(sc);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  rep.doubling_worst = 0.0;
  for (int t = 0; t < pairs && !family.empty(); ++t) {
    const Box q = family[pick(rng)].box;
    Box e = q;
    for (int a = 0; a < g.dim; ++a) {
      const double len = (q.hi[a] - q.lo[a]) * (0.02 + 0.98 * unit(rng));
      e.lo[a] = q.lo[a] + (q.hi[a] - q.lo[a] - len) * unit(rng);
      e.hi[a] = e.lo[a] + len;
    }
    const double mq = direct.integral(q) / q.measure();
    const double me = direct.integral(e) / e.measure();
    const double ratio = std::pow(e.measure() / q.measure(), p - 1.0) * mq / me;
    rep.doubling_worst = std::max(rep.doubling_worst, ratio);
  }
  rep.doubling_over_ap = rep.doubling_worst / rep.ap;

  if (gamma.has_closed_form()) {
    auto fn = gamma.closed_form()->fn;
    const GridFunction dilated = GridFunction::sample(
        g, ClosedForm{gamma.closed_form()->tag + "(lambda x)", [fn, lambda](const Point& x) {
                        return fn(Point{lambda * x[0], lambda * x[1]});
                      }});
    rep.dilated_ap = scan_ap(dilated, p, depth).value;
  } else {
    rep.dilated_ap = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

double cube_weight_norm(const WeightSequence& t, int k, const DyadicCube& cube) {
  const GridFunction& tk = t.level(k);
  if (cube.side() < tk.grid().spacing() * (1.0 - 1e-12))
    throw Error(ErrorKind::ResolutionExceeded, "cube finer than the grid spacing");
  const PrefixTable table(tk.grid(), powered(tk, t.p()));
  return std::pow(table.integral(cube_box(cube)), 1.0 / t.p());
}

XClassReport xclass_check(const WeightSequence& t, const XClassParams& params, int depth) {
  if (!(params.p > 0.0) || !(params.sigma1 > 0.0) || !(params.sigma2 > 0.0))
    throw Error(ErrorKind::InvalidExponent, "X-class exponents p, sigma1, sigma2 must be positive");
  if (depth < 0 || depth > t.k_max())
    throw Error(ErrorKind::MissingLevels, "X-class depth " + std::to_string(depth) + " exceeds available weight levels");
  const Grid& g = t.grid();
  const int K = depth;
  const double p = params.p;
  const bool inf1 = std::isinf(params.sigma1), inf2 = std::isinf(params.sigma2);

  std::vector<PrefixTable> tp, neg, pos;
  for (int k = 0; k <= K; ++k) {
    tp.emplace_back(g, powered(t.level(k), p));
    if (!inf1) neg.emplace_back(g, powered(t.level(k), -params.sigma1));
    if (!inf2) pos.emplace_back(g, powered(t.level(k), params.sigma2));
  }

  XClassReport rep;
  rep.alpha_order_violated = params.alpha2 < params.alpha1;
  std::vector<double> best1(std::size_t(K) + 1, 0.0), best2(std::size_t(K) + 1, 0.0);
  std::vector<double> a(std::size_t(K) + 1), b(std::size_t(K) + 1), c(std::size_t(K) + 1);
  for (const auto& sc : scan_family(g, g.coarsest_level(), g.finest_level())) {
    const double m = sc.box.measure();
    std::pair<int, int> ri{0, 0}, rj{0, 1};
    if (inf1 || inf2) {
      ri = cell_range(g, sc.box.lo[0], sc.box.hi[0]);
      if (g.dim == 2) rj = cell_range(g, sc.box.lo[1], sc.box.hi[1]);
      if (ri.first >= ri.second || rj.first >= rj.second) continue;
    }
    for (int k = 0; k <= K; ++k) {
      a[std::size_t(k)] = std::pow(tp[std::size_t(k)].integral(sc.box) / m, 1.0 / p);
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      if (inf1 || inf2) {
        const GridFunction& tk = t.level(k);
        for (int j = rj.first; j < rj.second; ++j)
          for (int i = ri.first; i < ri.second; ++i) {
            lo = std::min(lo, tk.at(i, j));
            hi = std::max(hi, tk.at(i, j));
          }
      }
      b[std::size_t(k)] = inf1 ? 1.0 / lo : std::pow(neg[std::size_t(k)].integral(sc.box) / m, 1.0 / params.sigma1);
      c[std::size_t(k)] = inf2 ? hi : std::pow(pos[std::size_t(k)].integral(sc.box) / m, 1.0 / params.sigma2);
    }
    ++rep.cubes_scanned;
    for (int j = 0; j <= K; ++j) {
      for (int k = 0; k <= j; ++k) {
        const double r1 = a[std::size_t(k)] * b[std::size_t(j)] * std::exp2(-params.alpha1 * (k - j));
        const double r2 = c[std::size_t(j)] / a[std::size_t(k)] * std::exp2(-params.alpha2 * (j - k));
        if (r1 > best1[std::size_t(j)]) best1[std::size_t(j)] = r1;
        if (r2 > best2[std::size_t(j)]) best2[std::size_t(j)] = r2;
        if (r1 > rep.c1) {
          rep.c1 = r1;
          rep.argmax1 = XClassArgmax{k, j, sc};
        }
        if (r2 > rep.c2) {
          rep.c2 = r2;
          rep.argmax2 = XClassArgmax{k, j, sc};
        }
      }
    }
  }
  double run1 = 0.0, run2 = 0.0;
  for (int j = 0; j <= K; ++j) {
    run1 = std::max(run1, best1[std::size_t(j)]);
    run2 = std::max(run2, best2[std::size_t(j)]);
    rep.c1_trace.push_back(run1);
    rep.c2_trace.push_back(run2);
  }
  const Verdict v1 = classify_refinement(rep.c1_trace);
  const Verdict v2 = classify_refinement(rep.c2_trace);
  if (v1 == Verdict::Fail || v2 == Verdict::Fail)
    rep.verdict = Verdict::Fail;
  else if (v1 == Verdict::Pass && v2 == Verdict::Pass)
    rep.verdict = Verdict::Pass;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

}  // namespace dilatest
