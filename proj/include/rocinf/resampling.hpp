#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rocinf/logit.hpp"
#include "rocinf/roc.hpp"

namespace rocinf {

enum class Scheme { weighted, multiplier };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme scheme);

struct BootstrapConfig {
  int replicates = 1000;  // B
  std::uint64_t seed = 0;
  WeightLaw weight_law = WeightLaw::two_point;
  int workers = 0;
  int max_redraws = 3;
  double max_failure_rate = 0.05;
};

/// B x m matrix of simulated process values, one row per replicate.
struct BootstrapDraws {
  Scheme scheme = Scheme::multiplier;
  std::vector<double> t_grid;
  MatrixXd draws;
  int replicates = 0;       // requested B
  std::uint64_t seed = 0;
  int failures = 0;         // replicates dropped after exhausting redraws
  int redraws = 0;          // weight vectors rejected and redrawn
  bool centering_flag = false;  // some |column mean| > 3 sd / sqrt(B)

  /// Per-column variance of the draws (divisor = number of rows).
  std::vector<double> column_variance() const;
};

/// One model taking part in a weighted bootstrap: its predictor subset and
/// the map applied to fitted probabilities before ROC evaluation.
struct RefitModel {
  const Dataset* data = nullptr;
  const FittedModel* fit = nullptr;
  MonotoneMap transform;
  std::vector<double> r_hat;  // R(t) on the original sample
};

/// sqrt(n)(R^w(t) - R(t)) with the first stage refitted on W-weighted data.
BootstrapDraws weighted_bootstrap(const Dataset& data, const FittedModel& model,
                                  const std::vector<double>& grid, const BootstrapConfig& cfg,
                                  const MonotoneMap& transform = {});

/// Shared-weight weighted bootstrap over several models fitted on the same rows.
std::vector<BootstrapDraws> weighted_bootstrap_joint(const std::vector<RefitModel>& models,
                                                     const std::vector<double>& grid,
                                                     const BootstrapConfig& cfg);

/// (1/sqrt(n)) sum_i U_i psi(i, t) with U_i ~ N(0, 1).
BootstrapDraws multiplier_bootstrap(const MatrixXd& psi, const std::vector<double>& grid,
                                    const BootstrapConfig& cfg);

/// Weighted bootstrap covariance of (TP^w(c), FP^w(c)) scaled by n.
Eigen::Matrix2d pointwise_bootstrap_cov(const Dataset& data, const FittedModel& model, double c,
                                        const BootstrapConfig& cfg);

/// Same with the index held fixed (no refit).
Eigen::Matrix2d pointwise_bootstrap_cov_fixed(const Dataset& data, const IndexValues& g, double c,
                                              const BootstrapConfig& cfg);

enum class SupMode { one_sided, two_sided };

SupMode parse_sup_mode(const std::string& name);
std::string to_string(SupMode mode);

struct SupStatistics {
  std::vector<double> sups;    // one per draw, in draw order
  std::vector<double> sorted;  // ascending

  /// M_(floor((1 - alpha) B)), the order-statistic quantile.
  double critical_value(double alpha) const;
};

SupStatistics sup_statistics(const MatrixXd& draws, const std::vector<double>& scale, SupMode mode);

}  // namespace rocinf
