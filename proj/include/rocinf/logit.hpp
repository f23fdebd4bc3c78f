#pragma once

#include <string>

#include "rocinf/data.hpp"
#include "rocinf/rng.hpp"

namespace rocinf {

double logistic(double v);
double softplus(double v);

/// First-stage logit fit together with its estimated influence rows.
struct FittedModel {
  VectorXd beta_hat;      // intercept first
  std::string link = "logit";
  double loglik = 0.0;    // average (weighted) log-likelihood at beta_hat
  MatrixXd psi_beta;      // n x (k+1), row i = A^{-1} x_i (y_i - p_i)
  MatrixXd a_matrix;      // sample analog of E[p(1-p) x x']
  MatrixXd v_hat;         // (1/n) sum psi_i psi_i'
  VectorXd fitted;        // Lambda(x_i' beta_hat)
  bool converged = false;
  int iterations = 0;
};

struct WeightVector {
  VectorXd w;
};

enum class WeightLaw {
  two_point,  // {0, 2} with probability 1/2 each
  gaussian,   // N(1, 1); multiplier scheme only, since it takes negative values
};

WeightLaw parse_weight_law(const std::string& name);
std::string to_string(WeightLaw law);

WeightVector draw_weights(int n, WeightLaw law, rng::Engine& engine);

struct LogitOptions {
  int max_iterations = 100;
  double gradient_tol = 1e-8;
  double objective_tol = 1e-12;
  double separation_bound = 30.0;
  VectorXd start;  // empty: start from zero
  bool with_influence = true;
};

FittedModel fit_logit(const Dataset& data, const LogitOptions& options = {});
FittedModel fit_logit_weighted(const Dataset& data, const WeightVector& w,
                               const LogitOptions& options = {});

/// Unweighted influence rows at `model.beta_hat`; also returns A via `a_out`.
MatrixXd influence_rows(const FittedModel& model, const Dataset& data,
                        MatrixXd* a_out = nullptr);

/// Lambda(x_i' beta) for every row.
VectorXd logit_probabilities(const Dataset& data, const VectorXd& beta);

/// Average log-likelihood (1/n) sum w_i q(y_i, x_i, beta); unit weights if w empty.
double logit_loglik(const Dataset& data, const VectorXd& beta, const VectorXd& w = {});

}  // namespace rocinf
