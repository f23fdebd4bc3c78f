#include "rocinf/influence.hpp"

#include <algorithm>
#include <cmath>

namespace rocinf {

PsiPair psi_tp_fp_at_cutoffs(const Dataset& data, const MatrixXd& psi_beta, const VectorXd& g,
                             const GradientPair& grads, const std::vector<double>& cutoffs) {
  const auto m = static_cast<Eigen::Index>(cutoffs.size());
  if (grads.grad_tp.rows() != m || grads.grad_fp.rows() != m ||
      psi_beta.cols() != grads.grad_tp.cols() || psi_beta.rows() != data.n() ||
      g.size() != data.n())
    throw Error(ErrorCode::DimensionMismatch, "influence inputs are misaligned");

  const double pi = data.pi_hat();
  PsiPair out{psi_beta * grads.grad_tp.transpose(), psi_beta * grads.grad_fp.transpose()};
  RocEvaluator ev(data, std::span<const double>(g.data(), g.size()));
  for (Eigen::Index j = 0; j < m; ++j) {
    const double c = cutoffs[static_cast<std::size_t>(j)];
    const double tp = ev.tp(c), fp = ev.fp(c);
    for (int i = 0; i < data.n(); ++i) {
      const double ind = g[i] > c ? 1.0 : 0.0;
      if (data.positive(i)) {
        out.tp(i, j) += (ind - tp) / pi;
      } else {
        out.fp(i, j) += (ind - fp) / (1.0 - pi);
      }
    }
  }
  return out;
}

MatrixXd psi_r_at_t(const PsiPair& psi, const std::vector<double>& ratio) {
  if (psi.tp.cols() != static_cast<Eigen::Index>(ratio.size()))
    throw Error(ErrorCode::DimensionMismatch, "ratio length differs from grid");
  MatrixXd out = psi.tp;
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    out.col(j) -= ratio[static_cast<std::size_t>(j)] * psi.fp.col(j);
  return out;
}

SigmaEstimate truncate_sigma(std::vector<double> sigma, double epsilon) {
  SigmaEstimate out;
  out.sigma = std::move(sigma);
  for (double s : out.sigma) out.sigma_eps.push_back(std::max(s, epsilon));
  return out;
}

SigmaEstimate analytic_sigma(const MatrixXd& psi_r, double epsilon) {
  std::vector<double> sigma;
  const double n = static_cast<double>(psi_r.rows());
  for (Eigen::Index j = 0; j < psi_r.cols(); ++j)
    sigma.push_back(std::sqrt(psi_r.col(j).squaredNorm() / n));
  return truncate_sigma(std::move(sigma), epsilon);
}

InfluenceTable uniform_influence(const Dataset& data, const FittedModel& model, const VectorXd& g,
                                 const RocCurve& roc, const KernelConfig& cfg) {
  const KernelSupport support = kernel_support(data, model.fitted, cfg);
  std::vector<double> canonical;
  canonical.reserve(roc.c_obs.size());
  for (std::size_t j = 0; j < roc.c_obs.size(); ++j) {
    const int obs = roc.c_obs[j];
    const double c = obs < 0 ? support.a0 : model.fitted[obs];
    if (!std::isfinite(c))
      throw Error(ErrorCode::RatioUnavailable, "cutoff outside density evaluation range");
    canonical.push_back(c);
  }
  const GradientPair grads = grad_tp_fp(data, model, cfg, canonical);
  const DensityPair dens = density_estimates(data, model.fitted, cfg, canonical);
  const PsiPair psi = psi_tp_fp_at_cutoffs(data, model.psi_beta, g, grads, roc.c_hat);

  InfluenceTable table;
  table.kind = InfluenceKind::uniform_t;
  table.grid = roc.t_grid;
  table.psi_r = psi_r_at_t(psi, dens.ratio);
  table.psi_tp = psi.tp;
  table.psi_fp = psi.fp;
  table.ratio = dens.ratio;
  table.sigma_t = analytic_sigma(table.psi_r, 0.0).sigma;
  return table;
}

InfluenceTable pointwise_influence(const Dataset& data, const FittedModel& model,
                                   const std::vector<double>& cutoffs, const KernelConfig& cfg) {
  const GradientPair grads = grad_tp_fp(data, model, cfg, cutoffs);
  PsiPair psi = psi_tp_fp_at_cutoffs(data, model.psi_beta, model.fitted, grads, cutoffs);
  InfluenceTable table;
  table.kind = InfluenceKind::pointwise_cutoff;
  table.grid = cutoffs;
  table.psi_tp = std::move(psi.tp);
  table.psi_fp = std::move(psi.fp);
  return table;
}

Eigen::Matrix2d pointwise_covariance(const InfluenceTable& table, int j) {
  const double n = static_cast<double>(table.psi_tp.rows());
  const auto tp = table.psi_tp.col(j);
  const auto fp = table.psi_fp.col(j);
  Eigen::Matrix2d cov;
  cov(0, 0) = tp.squaredNorm() / n;
  cov(1, 1) = fp.squaredNorm() / n;
  cov(0, 1) = cov(1, 0) = tp.dot(fp) / n;
  return cov;
}

}  // namespace rocinf
