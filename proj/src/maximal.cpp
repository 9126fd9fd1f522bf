#include "dilatest/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "dilatest/error.hpp"

namespace dilatest {

namespace {

/// out[i] = max of in[i-r .. i+r] (clamped), stride-aware.
void sliding_max(const double* in, double* out, int n, std::size_t stride, int r) {
  std::deque<int> dq;
  int right = 0;
  for (int i = 0; i < n; ++i) {
    const int hi = std::min(n - 1, i + r);
    for (; right <= hi; ++right) {
      while (!dq.empty() && in[std::size_t(dq.back()) * stride] <= in[std::size_t(right) * stride]) dq.pop_back();
      dq.push_back(right);
    }
    while (dq.front() < i - r) dq.pop_front();
    out[std::size_t(i) * stride] = in[std::size_t(dq.front()) * stride];
  }
}

std::vector<double> abs_pow(std::span<const double> v, double e) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(std::abs(v[i]), e);
  return out;
}

double lp_of_lq(const std::vector<std::vector<double>>& rows, double p, double q, double vol) {
  long double acc = 0.0;
  for (std::size_t idx = 0; idx < rows.front().size(); ++idx) {
    double inner = 0.0;
    for (const auto& r : rows) inner += std::pow(std::abs(r[idx]), q);
    acc += std::pow(inner, p / q);
  }
  return std::pow(double(acc) * vol, 1.0 / p);
}

void check_family(const std::vector<GridFunction>& fs) {
  if (fs.empty()) throw Error(ErrorKind::PreconditionFailed, "empty function family");
  for (const auto& f : fs)
    if (!(f.grid() == fs.front().grid())) throw Error(ErrorKind::PreconditionFailed, "family members live on different grids");
}

}  // namespace

GridFunction hl_maximal(const GridFunction& f) {
  const Grid& g = f.grid();
  const int n = g.n;
  const double h = g.spacing();
  const PrefixTable table(g, abs_pow(f.samples(), 1.0));
  const Box dom = Box::domain(g);
  const std::size_t size = g.size();
  std::vector<double> best(size, 0.0), avg(size), tmp(size);
  for (int j = 0; (1 << j) <= n; ++j) {
    const double half = 0.5 * std::ldexp(h, j);
    for (std::size_t idx = 0; idx < size; ++idx) {
      const Point c = g.point(idx);
      Box b{g.dim, c, c};
      for (int a = 0; a < g.dim; ++a) {
        b.lo[a] -= half;
        b.hi[a] += half;
      }
      const Box clipped = b.intersect(dom);
      avg[idx] = table.integral(clipped) / clipped.measure();
    }
    const int r = j == 0 ? 0 : 1 << (j - 1);
    if (g.dim == 1) {
      sliding_max(avg.data(), tmp.data(), n, 1, r);
    } else {
      for (int row = 0; row < n; ++row) sliding_max(avg.data() + std::size_t(row) * n, tmp.data() + std::size_t(row) * n, n, 1, r);
      for (int col = 0; col < n; ++col) sliding_max(tmp.data() + col, avg.data() + col, n, std::size_t(n), r);
      std::swap(avg, tmp);
    }
    for (std::size_t idx = 0; idx < size; ++idx) best[idx] = std::max(best[idx], tmp[idx]);
  }
  return GridFunction(g, std::move(best));
}

GridFunction m_sigma(const GridFunction& f, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidExponent, "sigma must be positive");
  const GridFunction powered(f.grid(), abs_pow(f.samples(), sigma));
  const GridFunction m = hl_maximal(powered);
  return GridFunction(f.grid(), abs_pow(m.samples(), 1.0 / sigma));
}

double fs_inequality_ratio(const std::vector<GridFunction>& fs, double p, double q, double sigma) {
  check_family(fs);
  if (!(p > 0.0 && q > 0.0)) throw Error(ErrorKind::InvalidExponent, "p and q must be positive");
  const Grid& g = fs.front().grid();
  std::vector<std::vector<double>> lhs, rhs;
  for (const auto& f : fs) {
    const auto m = m_sigma(f, sigma);
    lhs.emplace_back(m.samples().begin(), m.samples().end());
    rhs.emplace_back(f.samples().begin(), f.samples().end());
  }
  const double den = lp_of_lq(rhs, p, q, g.cell_volume());
  if (!(den > 0.0)) return 0.0;
  return lp_of_lq(lhs, p, q, g.cell_volume()) / den;
}

MaximalPrecondition maximal_precondition(const WeightSequence& t, double theta, int levels, int depth,
                                         const ApOptions& options) {
  const double p = t.p();
  if (!(theta > 1.0 && theta <= p)) throw Error(ErrorKind::InvalidExponent, "theta must lie in (1, p]");
  if (levels - 1 > t.k_max()) throw Error(ErrorKind::MissingLevels, "weight sequence shorter than the family");
  const Grid& g = t.grid();
  if (depth < 0) depth = std::max(g.coarsest_level(), g.finest_level() - 2);
  MaximalPrecondition out;
  for (int k = 0; k < levels; ++k) {
    const GridFunction w = t.level(k).map([p](double v) { return std::pow(v, p); }, "^p");
    const ApReport rep = theta < p ? ap_constant(w, p / theta, depth, options) : a1_constant(w, depth, options);
    out.constants.push_back(rep.constant);
    out.verdicts.push_back(rep.verdict);
    if (rep.verdict == Verdict::Fail) out.verdict = Verdict::Fail;
    else if (rep.verdict != Verdict::Pass && out.verdict == Verdict::Pass) out.verdict = Verdict::Inconclusive;
  }
  return out;
}

WeightedMaximalReport weighted_maximal(const std::vector<GridFunction>& fs, const WeightSequence& t_in, double p, double q,
                                       double theta, bool check) {
  check_family(fs);
  if (!(q > 1.0)) throw Error(ErrorKind::InvalidExponent, "q must be > 1");
  const Grid& g = fs.front().grid();
  const WeightSequence t = t_in.grid() == g ? t_in : t_in.resampled(g);
  if (check) {
    const auto pre = maximal_precondition(t, theta, int(fs.size()));
    if (pre.verdict == Verdict::Fail)
      throw Error(ErrorKind::PreconditionFailed, "t_k^p fails the A_{p/theta} scan");
  } else if (int(fs.size()) - 1 > t.k_max()) {
    throw Error(ErrorKind::MissingLevels, "weight sequence shorter than the family");
  }
  const double vol = g.cell_volume();
  WeightedMaximalReport out;
  std::vector<std::vector<double>> lhs, rhs;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const auto m = hl_maximal(fs[k]);
    const auto& tk = t.level(int(k));
    std::vector<double> a(g.size()), b(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      a[idx] = tk[idx] * m[idx];
      b[idx] = tk[idx] * fs[k][idx];
    }
    const double den = lp_of_lq({b}, p, p, vol);
    if (den > 0.0) out.worst_single = std::max(out.worst_single, lp_of_lq({a}, p, p, vol) / den);
    lhs.push_back(std::move(a));
    rhs.push_back(std::move(b));
  }
  const double den = lp_of_lq(rhs, p, q, vol);
  out.ratio = den > 0.0 ? lp_of_lq(lhs, p, q, vol) / den : 0.0;
  return out;
}

double weighted_maximal_ratio(const std::vector<GridFunction>& fs, const WeightSequence& t, double p, double q,
                              double theta, bool check) {
  return weighted_maximal(fs, t, p, q, theta, check).ratio;
}

}  // namespace dilatest
