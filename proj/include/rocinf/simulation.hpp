#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rocinf/inference.hpp"

namespace rocinf {

enum class PredictorLaw { normal01, uniform };  // uniform on [-0.5, 1.5]
enum class Link { logit, cauchit };

PredictorLaw parse_law(const std::string& name);
std::string to_string(PredictorLaw law);
Link parse_link(const std::string& name);
std::string to_string(Link link);

double link_value(Link link, double v);

struct DgpSpec {
  VectorXd beta_true = (VectorXd(4) << 0.0, 0.5, 0.25, 1.0).finished();
  PredictorLaw law = PredictorLaw::normal01;
  Link link = Link::logit;
  int n = 500;
  int noise_predictors = 0;  // extra columns drawn from `law`, unrelated to y

  void validate() const;
  int predictors() const { return static_cast<int>(beta_true.size()) - 1 + noise_predictors; }
};

/// Columns x1..xk (informative) followed by z1..zq (noise).
Dataset draw_sample(const DgpSpec& spec, std::uint64_t seed);

/// G(x'beta_true) for every row of a sample drawn from `spec`.
VectorXd true_index(const DgpSpec& spec, const Dataset& data);

struct TrueValues {
  std::vector<double> cutoffs, tp, fp;
  std::vector<double> t_grid, roc;
  double auc = 0.0;
  double pi = 0.0;
  std::int64_t mc_n = 0;
};

/// Population quantities of the index G(x'beta_true) by simulation. Class
/// membership is integrated out (each draw counts p toward the positives and
/// 1 - p toward the negatives), which removes the Bernoulli noise.
TrueValues true_values(const DgpSpec& spec, const std::vector<double>& cutoffs,
                       const std::vector<double>& t_grid, std::int64_t mc_n, std::uint64_t seed);

struct CoverageCell {
  double cutoff = 0.0;
  LinearTarget target;
  CiMethod method = CiMethod::corrected_analytic;
  double truth = 0.0;
  double nominal = 0.9;
  double coverage = 0.0;
  double mc_se = 0.0;
  int covered = 0;
  int boundary = 0;  // replications without a usable interval, scored as misses
  int replications = 0;
};

struct CoverageReport {
  std::vector<CoverageCell> cells;
  int requested = 0;
  int failures = 0;  // first-stage fits that failed and were excluded
  std::uint64_t seed = 0;
};

struct CoverageConfig {
  std::vector<double> cutoffs{0.2, 0.33, 0.5, 0.67, 0.8};
  std::vector<LinearTarget> targets{LinearTarget::tp(), LinearTarget::tp_minus_fp()};
  std::vector<CiMethod> methods{CiMethod::conventional_fixed_index,
                                CiMethod::conventional_estimated_index,
                                CiMethod::corrected_analytic};
  int replications = 2000;
  double level = 0.9;
  std::uint64_t seed = 0;
  int workers = 0;
  std::int64_t truth_draws = 1000000;
  ProcedureConfig procedure;  // kernel and bootstrap settings
};

CoverageReport coverage_experiment(const DgpSpec& spec, const CoverageConfig& cfg);

enum class Experiment { band, dominance, auc };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment kind = Experiment::band;
  ModelSpec model1;  // band uses model1 only
  ModelSpec model2;
  int replications = 1000;
  std::uint64_t seed = 0;
  int workers = 0;
  std::int64_t truth_draws = 1000000;
  ProcedureConfig procedure;
};

struct ExperimentSummary {
  Experiment kind = Experiment::band;
  int requested = 0;
  int valid = 0;
  int failures = 0;  // excluded replications (fit failures, degenerate statistics)
  int hits = 0;      // band covers / test rejects
  double rate = 0.0;
  double mc_se = 0.0;
  double mean_statistic = 0.0;  // critical value, S_hat or z averaged over valid replications
};

ExperimentSummary band_and_test_experiment(const DgpSpec& spec, const ExperimentConfig& cfg);

}  // namespace rocinf
