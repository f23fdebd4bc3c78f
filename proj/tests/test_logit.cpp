#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rocinf/logit.hpp"
#include "rocinf/simulation.hpp"

using namespace rocinf;

TEST(Logit, MatchesNewtonOracle) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Dataset d = draw_sample(DgpSpec{}, seed);
    const FittedModel m = fit_logit(d);
    ASSERT_TRUE(m.converged);
    const VectorXd b = oracle::logit_newton(d.design(), d.y());
    EXPECT_LT((m.beta_hat - b).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Logit, InfluenceRowsAverageToZero) {
  const Dataset d = draw_sample(DgpSpec{}, 4);
  const FittedModel m = fit_logit(d);
  EXPECT_LT(m.psi_beta.colwise().mean().cwiseAbs().maxCoeff(), 1e-8);
  const MatrixXd v = m.psi_beta.transpose() * m.psi_beta / d.n();
  EXPECT_LT((v - m.v_hat).cwiseAbs().maxCoeff(), 1e-12);
  // sandwich identity for a correctly specified logit: V ~ A^-1
  const MatrixXd ainv = m.a_matrix.inverse();
  for (int j = 0; j < ainv.rows(); ++j) EXPECT_NEAR(m.v_hat(j, j) / ainv(j, j), 1.0, 0.25);
}

TEST(Logit, WeightedFitWithUnitWeightsIsUnweighted) {
  const Dataset d = draw_sample(DgpSpec{}, 5);
  const FittedModel a = fit_logit(d);
  const FittedModel b = fit_logit_weighted(d, WeightVector{VectorXd::Ones(d.n())});
  EXPECT_LT((a.beta_hat - b.beta_hat).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Logit, TwoPointBootstrapCovarianceTracksVhat) {
  DgpSpec spec;
  spec.n = 1000;
  const Dataset d = draw_sample(spec, 6);
  const FittedModel m = fit_logit(d);
  const int reps = 600;
  MatrixXd draws(reps, m.beta_hat.size());
  LogitOptions opt;
  opt.start = m.beta_hat;
  opt.with_influence = false;
  for (int r = 0; r < reps; ++r) {
    rng::Engine e = rng::stream(77, static_cast<std::uint64_t>(r));
    const WeightVector w = draw_weights(d.n(), WeightLaw::two_point, e);
    draws.row(r) = std::sqrt(double(d.n())) * (fit_logit_weighted(d, w, opt).beta_hat - m.beta_hat);
  }
  const MatrixXd centered = draws.rowwise() - draws.colwise().mean();
  const MatrixXd cov = centered.transpose() * centered / reps;
  for (int j = 0; j < cov.rows(); ++j) EXPECT_NEAR(cov(j, j) / m.v_hat(j, j), 1.0, 0.15) << j;
}

TEST(Logit, SeparationAndRankErrors) {
  const VectorXd y = (VectorXd(6) << 0, 0, 0, 1, 1, 1).finished();
  const MatrixXd x = (VectorXd(6) << 1, 2, 3, 4, 5, 6).finished();
  try {
    fit_logit(Dataset(y, x));
    FAIL() << "expected separation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Separation);
  }
  MatrixXd x2(6, 2);
  x2.col(0) = (VectorXd(6) << 1, 3, 2, 5, 4, 6).finished();
  x2.col(1) = 2.0 * x2.col(0);
  try {
    fit_logit(Dataset(y, x2));
    FAIL() << "expected rank deficiency";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Logit, ZeroClassWeightIsReported) {
  const Dataset d = draw_sample(DgpSpec{}, 8);
  VectorXd w = VectorXd::Ones(d.n());
  for (int i : d.positives()) w[i] = 0.0;
  try {
    fit_logit_weighted(d, WeightVector{w});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZeroClassWeight);
  }
}

TEST(Weights, TwoPointLawMoments) {
  rng::Engine e = rng::stream(3, 0);
  const WeightVector w = draw_weights(200000, WeightLaw::two_point, e);
  EXPECT_TRUE(((w.w.array() == 0.0) || (w.w.array() == 2.0)).all());
  EXPECT_NEAR(w.w.mean(), 1.0, 0.01);
}
