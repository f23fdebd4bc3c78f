#include "rocinf/roc.hpp"

#include <algorithm>
#include <numeric>

namespace rocinf {

RocEvaluator::Steps RocEvaluator::build(std::span<const double> g,
                                        std::span<const double> weights,
                                        const std::vector<int>& rows) {
  std::vector<int> order(rows);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g[a] < g[b]; });
  Steps s;
  double running = 0.0;
  for (int i : order) {
    const double wi = weights.empty() ? 1.0 : weights[i];
    running += wi;
    if (!s.values.empty() && s.values.back() == g[i]) {
      s.cum.back() = running;
    } else {
      s.values.push_back(g[i]);
      s.cum.push_back(running);
      s.rep.push_back(i);
    }
  }
  s.total = running;
  return s;
}

double RocEvaluator::Steps::above(double c) const {
  const auto idx = std::upper_bound(values.begin(), values.end(), c) - values.begin();
  return idx == 0 ? total : total - cum[static_cast<std::size_t>(idx - 1)];
}

RocEvaluator::RocEvaluator(const Dataset& data, std::span<const double> g,
                           std::span<const double> weights) {
  if (static_cast<int>(g.size()) != data.n() ||
      (!weights.empty() && static_cast<int>(weights.size()) != data.n()))
    throw Error(ErrorCode::DimensionMismatch, "index/weights length differs from n");
  pos_ = build(g, weights, data.positives());
  neg_ = build(g, weights, data.negatives());
  if (!(pos_.total > 0.0) || !(neg_.total > 0.0))
    throw Error(ErrorCode::AllZeroClassWeight, "an outcome class carries zero total weight");
}

std::pair<double, int> RocEvaluator::fp_inverse(double t) const {
  // Slack absorbs rounding in t * total when t*total is a whole count.
  const double allowed = t * neg_.total + 1e-9;
  if (neg_.total <= allowed) return {kMinusInfinity, -1};
  const auto& cum = neg_.cum;
  std::size_t lo = 0, hi = cum.size() - 1;  // predicate holds at hi (above = 0)
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (neg_.total - cum[mid] <= allowed) hi = mid; else lo = mid + 1;
  }
  return {neg_.values[lo], neg_.rep[lo]};
}

std::pair<double, double> tp_fp_at_cutoff(const Dataset& data, const IndexValues& g, double c) {
  RocEvaluator ev(data, std::span<const double>(g.g.data(), g.g.size()));
  return {ev.tp(c), ev.fp(c)};
}

double fp_inverse(const Dataset& data, const IndexValues& g, double t) {
  RocEvaluator ev(data, std::span<const double>(g.g.data(), g.g.size()));
  return ev.fp_inverse(t).first;
}

RocCurve roc_at_grid(const Dataset& data, const IndexValues& g, const std::vector<double>& grid) {
  RocEvaluator ev(data, std::span<const double>(g.g.data(), g.g.size()));
  RocCurve curve;
  curve.t_grid = grid;
  curve.r_values.reserve(grid.size());
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::InvalidConfig, "t outside [0,1]");
    auto [c, obs] = ev.fp_inverse(t);
    curve.c_hat.push_back(c);
    curve.c_obs.push_back(obs);
    curve.r_values.push_back(ev.tp(c));
  }
  curve.auc = auc(data, g);
  return curve;
}

double auc(const Dataset& data, const IndexValues& g) {
  if (g.g.size() != data.n())
    throw Error(ErrorCode::DimensionMismatch, "index length differs from n");
  std::vector<double> neg;
  neg.reserve(static_cast<std::size_t>(data.n0()));
  for (int i : data.negatives()) neg.push_back(g.g[i]);
  std::sort(neg.begin(), neg.end());
  double u = 0.0;
  for (int i : data.positives()) {
    auto lo = std::lower_bound(neg.begin(), neg.end(), g.g[i]);
    auto hi = std::upper_bound(lo, neg.end(), g.g[i]);
    u += static_cast<double>(lo - neg.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return u / (static_cast<double>(data.n0()) * static_cast<double>(data.n1()));
}

std::vector<double> weighted_roc(const Dataset& data, std::span<const double> g,
                                 std::span<const double> weights,
                                 const std::vector<double>& grid) {
  RocEvaluator ev(data, g, weights);
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(ev.roc(t));
  return out;
}

double trapezoid(const std::vector<double>& x, std::span<const double> y) {
  double area = 0.0;
  for (std::size_t j = 1; j < x.size(); ++j) area += 0.5 * (x[j] - x[j - 1]) * (y[j] + y[j - 1]);
  return area;
}

}  // namespace rocinf
