#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rocinf/data.hpp"

namespace rocinf {

/// Empirical ROC curve evaluated on a t grid.
struct RocCurve {
  std::vector<double> t_grid;
  std::vector<double> r_values;
  std::vector<double> c_hat;   // FP^-1(t); -inf at the t = 1 sentinel
  std::vector<int> c_obs;      // an observation whose index equals c_hat, -1 for -inf
  double auc = 0.0;
};

/// Right-continuous step functions c -> (weighted) share of each class with
/// index strictly above c. Build once, query in O(log n).
class RocEvaluator {
 public:
  RocEvaluator(const Dataset& data, std::span<const double> g,
               std::span<const double> weights = {});

  double tp(double c) const { return pos_.above(c) / pos_.total; }
  double fp(double c) const { return neg_.above(c) / neg_.total; }

  /// inf{c : FP(c) <= t}; returns the cutoff and an observation attaining it.
  std::pair<double, int> fp_inverse(double t) const;

  double roc(double t) const { return tp(fp_inverse(t).first); }

 private:
  struct Steps {
    std::vector<double> values;  // distinct, ascending
    std::vector<double> cum;     // weight at or below values[j]
    std::vector<int> rep;
    double total = 0.0;
    double above(double c) const;
  };
  static Steps build(std::span<const double> g, std::span<const double> weights,
                     const std::vector<int>& rows);

  Steps pos_, neg_;
};

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

std::pair<double, double> tp_fp_at_cutoff(const Dataset& data, const IndexValues& g, double c);
double fp_inverse(const Dataset& data, const IndexValues& g, double t);
RocCurve roc_at_grid(const Dataset& data, const IndexValues& g, const std::vector<double>& grid);

/// Mann-Whitney area with half credit for ties.
double auc(const Dataset& data, const IndexValues& g);

/// R^w(t) for bootstrap weights (class totals are the weighted sums).
std::vector<double> weighted_roc(const Dataset& data, std::span<const double> g,
                                 std::span<const double> weights,
                                 const std::vector<double>& grid);

/// Trapezoid rule over a grid.
double trapezoid(const std::vector<double>& x, std::span<const double> y);

}  // namespace rocinf
