#include "rocinf/logit.hpp"

#include <cmath>

namespace rocinf {

double logistic(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

double softplus(double v) {
  return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
}

WeightLaw parse_weight_law(const std::string& name) {
  if (name == "two_point" || name == "0-2" || name == "two-point") return WeightLaw::two_point;
  if (name == "gaussian" || name == "normal") return WeightLaw::gaussian;
  throw Error(ErrorCode::InvalidConfig, "unknown weight law '" + name + "'");
}

std::string to_string(WeightLaw law) {
  return law == WeightLaw::two_point ? "two_point" : "gaussian";
}

WeightVector draw_weights(int n, WeightLaw law, rng::Engine& engine) {
  WeightVector out{VectorXd(n)};
  if (law == WeightLaw::two_point) {
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) out.w[i] = coin(engine) ? 2.0 : 0.0;
  } else {
    std::normal_distribution<double> normal(1.0, 1.0);
    for (int i = 0; i < n; ++i) out.w[i] = normal(engine);
  }
  return out;
}

VectorXd logit_probabilities(const Dataset& data, const VectorXd& beta) {
  VectorXd eta = data.x() * beta.tail(data.k());
  eta.array() += beta[0];
  return eta.unaryExpr([](double v) { return logistic(v); });
}

double logit_loglik(const Dataset& data, const VectorXd& beta, const VectorXd& w) {
  VectorXd eta = data.x() * beta.tail(data.k());
  eta.array() += beta[0];
  double total = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const double q = data.y()[i] * eta[i] - softplus(eta[i]);
    total += (w.size() ? w[i] : 1.0) * q;
  }
  return total / data.n();
}

namespace {

struct InfluenceParts {
  MatrixXd a;
  MatrixXd psi;
  MatrixXd v;
};

InfluenceParts compute_influence(const MatrixXd& design, const VectorXd& y, const VectorXd& p,
                                 const VectorXd* w) {
  const auto n = static_cast<double>(design.rows());
  VectorXd curvature = p.array() * (1.0 - p.array());
  if (w) curvature.array() *= w->array();
  InfluenceParts out;
  out.a = design.transpose() * curvature.asDiagonal() * design / n;
  Eigen::LLT<MatrixXd> llt(out.a);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SingularAMatrix, "A matrix is not positive definite");
  MatrixXd score = design.array().colwise() * (y - p).array();
  out.psi = llt.solve(score.transpose()).transpose();
  if (w) {
    out.v = out.psi.transpose() * w->asDiagonal() * out.psi / n;
  } else {
    out.v = out.psi.transpose() * out.psi / n;
  }
  return out;
}

FittedModel fit_impl(const Dataset& data, const VectorXd* w, const LogitOptions& opt) {
  const MatrixXd design = data.design();
  const VectorXd& y = data.y();
  const int n = data.n();
  const int p = data.k() + 1;
  const double inv_n = 1.0 / n;

  {
    // Rank check on the rows that carry weight.
    MatrixXd active = design;
    if (w) active.array().colwise() *= w->array().max(0.0).sqrt();
    Eigen::ColPivHouseholderQR<MatrixXd> qr(active);
    qr.setThreshold(1e-10);
    if (qr.rank() < p)
      throw Error(ErrorCode::RankDeficient, "design matrix rank " + std::to_string(qr.rank()) +
                                                " < " + std::to_string(p));
  }

  auto objective = [&](const VectorXd& beta) {
    const VectorXd eta = design * beta;
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total += (w ? (*w)[i] : 1.0) * (y[i] * eta[i] - softplus(eta[i]));
    return total * inv_n;
  };

  FittedModel model;
  VectorXd beta = opt.start.size() == p ? opt.start : VectorXd::Zero(p);
  double obj = objective(beta);
  VectorXd prob(n), grad(p);
  MatrixXd hess(p, p);

  auto evaluate = [&] {
    prob = (design * beta).unaryExpr([](double v) { return logistic(v); });
    VectorXd resid = y - prob;
    VectorXd curv = prob.array() * (1.0 - prob.array());
    if (w) {
      resid.array() *= w->array();
      curv.array() *= w->array();
    }
    grad = design.transpose() * resid * inv_n;
    hess = design.transpose() * curv.asDiagonal() * design * inv_n;
  };

  evaluate();
  bool converged = false;
  double rel_change = 1.0;
  int iter = 0;
  for (iter = 1; iter <= opt.max_iterations; ++iter) {
    Eigen::LDLT<MatrixXd> ldlt(hess);
    VectorXd step = ldlt.solve(grad);
    if (ldlt.info() != Eigen::Success || !step.allFinite())
      throw Error(ErrorCode::Separation, "Hessian became singular (saturated fit)");
    double scale = 1.0;
    VectorXd candidate = beta + step;
    double cand_obj = objective(candidate);
    for (int halving = 0; halving < 40 && !(cand_obj >= obj - 1e-15 * std::abs(obj)); ++halving) {
      scale *= 0.5;
      candidate = beta + scale * step;
      cand_obj = objective(candidate);
    }
    rel_change = std::abs(cand_obj - obj) / std::max(1.0, std::abs(obj));
    beta = candidate;
    obj = cand_obj;
    evaluate();
    if (beta.cwiseAbs().maxCoeff() > opt.separation_bound)
      throw Error(ErrorCode::Separation,
                  "coefficients diverge (|beta|_inf > " + std::to_string(opt.separation_bound) + ")");
    if (grad.cwiseAbs().maxCoeff() < opt.gradient_tol && rel_change < opt.objective_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::NoConvergence,
                "logit did not converge in " + std::to_string(opt.max_iterations) + " iterations");

  // Saturation: every carrying observation fitted at 0 or 1.
  bool saturated = true;
  for (int i = 0; i < n && saturated; ++i) {
    if (w && (*w)[i] == 0.0) continue;
    if (prob[i] > 1e-10 && prob[i] < 1.0 - 1e-10) saturated = false;
  }
  if (saturated) throw Error(ErrorCode::Separation, "fitted probabilities saturate");

  model.beta_hat = beta;
  model.loglik = obj;
  model.fitted = prob;
  model.converged = true;
  model.iterations = iter;
  if (opt.with_influence) {
    auto parts = compute_influence(design, y, prob, w);
    model.a_matrix = std::move(parts.a);
    model.psi_beta = std::move(parts.psi);
    model.v_hat = std::move(parts.v);
  }
  return model;
}

}  // namespace

FittedModel fit_logit(const Dataset& data, const LogitOptions& options) {
  return fit_impl(data, nullptr, options);
}

FittedModel fit_logit_weighted(const Dataset& data, const WeightVector& w,
                               const LogitOptions& options) {
  if (w.w.size() != data.n())
    throw Error(ErrorCode::DimensionMismatch, "weight vector length differs from n");
  if ((w.w.array() < 0.0).any())
    throw Error(ErrorCode::InvalidConfig, "negative weights break the weighted M-estimator");
  double pos = 0.0, neg = 0.0;
  for (int i = 0; i < data.n(); ++i) (data.positive(i) ? pos : neg) += w.w[i];
  if (pos <= 0.0 || neg <= 0.0)
    throw Error(ErrorCode::AllZeroClassWeight, "an outcome class carries zero total weight");
  return fit_impl(data, &w.w, options);
}

MatrixXd influence_rows(const FittedModel& model, const Dataset& data, MatrixXd* a_out) {
  const VectorXd prob = logit_probabilities(data, model.beta_hat);
  auto parts = compute_influence(data.design(), data.y(), prob, nullptr);
  if (a_out) *a_out = parts.a;
  return parts.psi;
}

}  // namespace rocinf
