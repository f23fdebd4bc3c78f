#pragma once

#include <vector>

#include "rocinf/kernel.hpp"
#include "rocinf/logit.hpp"
#include "rocinf/roc.hpp"

namespace rocinf {

enum class InfluenceKind { pointwise_cutoff, uniform_t };

/// Estimated influence functions, one column per grid point.
struct InfluenceTable {
  InfluenceKind kind = InfluenceKind::uniform_t;
  std::vector<double> grid;  // t values (uniform) or cutoffs (pointwise)
  MatrixXd psi_tp;           // n x m
  MatrixXd psi_fp;
  MatrixXd psi_r;            // empty for the pointwise kind
  std::vector<double> sigma_t;
  std::vector<double> ratio;  // f1/f0 at each cutoff (uniform kind)
};

struct PsiPair {
  MatrixXd tp, fp;
};

/// psi_TP(i, c) = (y_i / pi)(1[g_i > c] - TP(c)) + grad_TP(c) . psi_beta_i, and the
/// FP analogue. `cutoffs` are on the scale of `g`; gradient rows align with them.
PsiPair psi_tp_fp_at_cutoffs(const Dataset& data, const MatrixXd& psi_beta, const VectorXd& g,
                             const GradientPair& grads, const std::vector<double>& cutoffs);

/// psi_R = psi_TP - ratio * psi_FP, column by column.
MatrixXd psi_r_at_t(const PsiPair& psi, const std::vector<double>& ratio);

struct SigmaEstimate {
  std::vector<double> sigma;      // sqrt of column mean squares
  std::vector<double> sigma_eps;  // max(sigma, eps)
};

SigmaEstimate analytic_sigma(const MatrixXd& psi_r, double epsilon);
SigmaEstimate truncate_sigma(std::vector<double> sigma, double epsilon);

/// Influence table for the ROC curve at the roc's grid. `g` is the (possibly
/// transformed) index the curve was built from; kernel quantities are taken on
/// the model's probability scale at the observation attaining each cutoff, so
/// the table is unchanged by strictly increasing transforms of `g`.
InfluenceTable uniform_influence(const Dataset& data, const FittedModel& model, const VectorXd& g,
                                 const RocCurve& roc, const KernelConfig& cfg);

/// Pointwise TP/FP influence at fixed cutoffs on the probability scale.
InfluenceTable pointwise_influence(const Dataset& data, const FittedModel& model,
                                   const std::vector<double>& cutoffs, const KernelConfig& cfg);

/// (1/n) sum psi_i psi_i' for the stacked (TP, FP) pair at column j.
Eigen::Matrix2d pointwise_covariance(const InfluenceTable& table, int j);

}  // namespace rocinf
