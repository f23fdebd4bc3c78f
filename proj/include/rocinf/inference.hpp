#pragma once

#include <string>
#include <vector>

#include "rocinf/influence.hpp"
#include "rocinf/kernel.hpp"
#include "rocinf/logit.hpp"
#include "rocinf/resampling.hpp"
#include "rocinf/roc.hpp"

namespace rocinf {

/// a * TP + b * FP.
struct LinearTarget {
  double a = 1.0;
  double b = 0.0;

  static LinearTarget tp() { return {1.0, 0.0}; }
  static LinearTarget fp() { return {0.0, 1.0}; }
  static LinearTarget tp_minus_fp() { return {1.0, -1.0}; }
};

LinearTarget parse_target(const std::string& text);  // tp | fp | tp-fp | linear:a,b
std::string to_string(const LinearTarget& target);

enum class CiMethod {
  conventional_fixed_index,
  conventional_estimated_index,
  corrected_analytic,
  corrected_bootstrap,
};

CiMethod parse_ci_method(const std::string& name);
std::string to_string(CiMethod method);

struct PointwiseCI {
  double cutoff = 0.0;
  LinearTarget target;
  double estimate = 0.0;
  CiMethod method = CiMethod::corrected_analytic;
  double level = 0.9;
  double lower = 0.0;
  double upper = 0.0;
  double se = 0.0;
  double tp = 0.0;
  double fp = 0.0;
};

/// Everything the procedures need beyond the data and the fitted models.
struct ProcedureConfig {
  GridConfig grid;
  KernelConfig kernel;
  Scheme scheme = Scheme::multiplier;
  BootstrapConfig boot;
  SupMode mode = SupMode::two_sided;
};

/// A first-stage model: predictor subset plus the transform applied to its
/// fitted probabilities before the ROC curve is built.
struct ModelSpec {
  std::vector<int> columns;  // empty: all predictors
  MonotoneMap transform;
  std::string transform_name = "identity";
};

/// Two-sided normal quantile z_{1 - (1 - level) / 2}.
double normal_critical(double level);

/// CI at cutoff c for a user-supplied index held fixed (no first stage).
PointwiseCI pointwise_ci_fixed(const Dataset& data, const IndexValues& g, double c,
                               const LinearTarget& target, double level);

/// CI at cutoff c (probability scale) for the fitted logit index.
PointwiseCI pointwise_ci(const Dataset& data, const FittedModel& model, double c,
                         const LinearTarget& target, CiMethod method, double level,
                         const ProcedureConfig& cfg = {});

struct BandResult {
  std::vector<double> t_grid;
  std::vector<double> r_hat;
  std::vector<double> sigma;
  std::vector<double> sigma_eps;
  double critical_value = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;  // +inf for the one-sided band
  SupMode mode = SupMode::two_sided;
  double level = 0.9;
  Scheme scheme = Scheme::multiplier;
  int replicates = 0;
  int failures = 0;
  bool centering_flag = false;
  double auc = 0.0;
};

/// Uniform band for R(t) over the configured grid. `transform` maps the
/// fitted probabilities to the reported index.
BandResult uniform_band(const Dataset& data, const FittedModel& model, const ProcedureConfig& cfg,
                        const MonotoneMap& transform = {});

struct DominanceResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool reject = false;
  double alpha = 0.05;
  double argmax_t = 0.0;
  std::vector<double> t_grid;
  std::vector<double> r_hat1, r_hat2;
  std::vector<double> sigma_rd;  // floored at epsilon
  Scheme scheme = Scheme::multiplier;
  int replicates = 0;
  int failures = 0;
};

/// One model fitted on a column subset of a shared dataset.
struct FittedSpec {
  Dataset data;
  FittedModel model;
  MonotoneMap transform;
};

FittedSpec fit_spec(const Dataset& full, const ModelSpec& spec);

/// Tests H0: R1(t) >= R2(t) for every t on the grid against R2 > R1 somewhere.
DominanceResult dominance_test(const FittedSpec& m1, const FittedSpec& m2,
                               const ProcedureConfig& cfg);

struct AucComparison {
  double auc1 = 0.0, auc2 = 0.0;
  double diff = 0.0;
  double se_diff = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  double v_hat_a = 0.0;
  bool degenerate_warning = false;
  bool full_range = false;  // grid spans [0, 1]: AUCs are Mann-Whitney
};

inline constexpr double kDegenerateVariance = 1e-6;

AucComparison auc_compare(const FittedSpec& m1, const FittedSpec& m2, const ProcedureConfig& cfg);

}  // namespace rocinf
