#include <gtest/gtest.h>

#include "rocinf/influence.hpp"
#include "rocinf/resampling.hpp"
#include "rocinf/simulation.hpp"

using namespace rocinf;

namespace {

struct Fixture {
  Dataset data;
  FittedModel model;
  std::vector<double> grid;
  RocCurve roc;
  InfluenceTable table;
};

Fixture make_fixture(int n, std::uint64_t seed) {
  DgpSpec spec;
  spec.n = n;
  Dataset d = draw_sample(spec, seed);
  FittedModel m = fit_logit(d);
  GridConfig g;
  g.tau_l = 0.1;
  g.tau_u = 0.9;
  g.step = 0.1;
  auto grid = make_t_grid(g);
  RocCurve roc = roc_at_grid(d, IndexValues(m.fitted), grid);
  InfluenceTable tab = uniform_influence(d, m, m.fitted, roc, KernelConfig{});
  return {std::move(d), std::move(m), std::move(grid), std::move(roc), std::move(tab)};
}

}  // namespace

TEST(Influence, PsiTpMatchesDefinition) {
  const Fixture f = make_fixture(400, 1);
  const std::vector<double> c{0.3, 0.5, 0.8};
  const GradientPair gp = grad_tp_fp(f.data, f.model, KernelConfig{}, c);
  const PsiPair psi = psi_tp_fp_at_cutoffs(f.data, f.model.psi_beta, f.model.fitted, gp, c);
  const double pi = f.data.pi_hat();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto [tp, fp] = tp_fp_at_cutoff(f.data, IndexValues(f.model.fitted), c[j]);
    for (int i = 0; i < f.data.n(); ++i) {
      const double above = f.model.fitted[i] > c[j] ? 1.0 : 0.0;
      const double y = f.data.y()[i];
      const double e_tp = y / pi * (above - tp) + gp.grad_tp.row(j).dot(f.model.psi_beta.row(i));
      const double e_fp =
          (1 - y) / (1 - pi) * (above - fp) + gp.grad_fp.row(j).dot(f.model.psi_beta.row(i));
      ASSERT_NEAR(psi.tp(i, j), e_tp, 1e-12);
      ASSERT_NEAR(psi.fp(i, j), e_fp, 1e-12);
    }
  }
}

TEST(Influence, RocInfluenceIsTpMinusSlopeTimesFp) {
  const Fixture f = make_fixture(400, 2);
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    const VectorXd expect = f.table.psi_tp.col(j) - f.table.ratio[j] * f.table.psi_fp.col(j);
    EXPECT_LT((f.table.psi_r.col(j) - expect).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(f.table.sigma_t[j], std::sqrt(expect.squaredNorm() / f.data.n()), 1e-12);
  }
}

TEST(Influence, FixedIndexCovarianceIsBinomial) {
  // with no first-stage term the TP influence has mean square TP(1-TP)/pi exactly
  Fixture f = make_fixture(500, 3);
  f.model.psi_beta.setZero();
  const std::vector<double> c{0.25, 0.5, 0.75};
  const InfluenceTable tab = pointwise_influence(f.data, f.model, c, KernelConfig{});
  const double pi = f.data.pi_hat();
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto [tp, fp] = tp_fp_at_cutoff(f.data, IndexValues(f.model.fitted), c[j]);
    const Eigen::Matrix2d cov = pointwise_covariance(tab, static_cast<int>(j));
    EXPECT_NEAR(cov(0, 0), tp * (1 - tp) / pi, 1e-12);
    EXPECT_NEAR(cov(1, 1), fp * (1 - fp) / (1 - pi), 1e-12);
    EXPECT_NEAR(cov(0, 1), 0.0, 1e-12);
  }
}

TEST(Influence, SigmaFloor) {
  MatrixXd psi = MatrixXd::Zero(10, 2);
  psi.col(1).setConstant(2.0);
  const SigmaEstimate s = analytic_sigma(psi, 0.01);
  EXPECT_EQ(s.sigma[0], 0.0);
  EXPECT_EQ(s.sigma_eps[0], 0.01);
  EXPECT_DOUBLE_EQ(s.sigma_eps[1], 2.0);
}

TEST(SupStats, OrderStatisticCriticalValue) {
  MatrixXd draws(4, 1);
  draws << 4.0, -1.0, 3.0, 2.0;
  const SupStatistics two = sup_statistics(draws, {1.0}, SupMode::two_sided);
  EXPECT_EQ(two.sorted, (std::vector<double>{1.0, 2.0, 3.0, 4.0}));
  EXPECT_EQ(two.critical_value(0.25), 3.0);
  const SupStatistics one = sup_statistics(draws, {1.0}, SupMode::one_sided);
  EXPECT_EQ(one.sorted, (std::vector<double>{-1.0, 2.0, 3.0, 4.0}));
  for (std::size_t b = 0; b < 4; ++b) EXPECT_GE(two.sups[b], one.sups[b]);
}

TEST(Multiplier, VarianceMatchesAnalytic) {
  const Fixture f = make_fixture(1000, 4);
  BootstrapConfig cfg;
  cfg.replicates = 4000;
  cfg.seed = 9;
  const BootstrapDraws bd = multiplier_bootstrap(f.table.psi_r, f.grid, cfg);
  const auto var = bd.column_variance();
  for (std::size_t j = 0; j < f.grid.size(); ++j)
    EXPECT_NEAR(var[j] / (f.table.sigma_t[j] * f.table.sigma_t[j]), 1.0, 0.1) << f.grid[j];
  EXPECT_FALSE(bd.centering_flag);
  const auto sig = analytic_sigma(f.table.psi_r, 0.01);
  const double cv = sup_statistics(bd.draws, sig.sigma_eps, SupMode::two_sided).critical_value(0.1);
  EXPECT_GT(cv, 1.645);
}

TEST(Multiplier, DeterministicAcrossWorkers) {
  const Fixture f = make_fixture(300, 5);
  BootstrapConfig cfg;
  cfg.replicates = 200;
  cfg.seed = 11;
  cfg.workers = 1;
  const MatrixXd a = multiplier_bootstrap(f.table.psi_r, f.grid, cfg).draws;
  cfg.workers = 3;
  const MatrixXd b = multiplier_bootstrap(f.table.psi_r, f.grid, cfg).draws;
  EXPECT_TRUE(a == b);
  cfg.seed = 12;
  EXPECT_FALSE(a == multiplier_bootstrap(f.table.psi_r, f.grid, cfg).draws);
}

TEST(Weighted, DeterministicAcrossWorkers) {
  const Fixture f = make_fixture(300, 6);
  BootstrapConfig cfg;
  cfg.replicates = 60;
  cfg.seed = 13;
  cfg.workers = 1;
  const BootstrapDraws a = weighted_bootstrap(f.data, f.model, f.grid, cfg);
  cfg.workers = 3;
  const BootstrapDraws b = weighted_bootstrap(f.data, f.model, f.grid, cfg);
  EXPECT_TRUE(a.draws == b.draws);
  EXPECT_EQ(a.failures, b.failures);
  EXPECT_EQ(a.draws.rows(), 60);
}

TEST(Weighted, RejectsGaussianWeights) {
  const Fixture f = make_fixture(200, 7);
  BootstrapConfig cfg;
  cfg.replicates = 10;
  cfg.weight_law = WeightLaw::gaussian;
  try {
    weighted_bootstrap(f.data, f.model, f.grid, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Weighted, FixedIndexCovarianceIsConventional) {
  const Fixture f = make_fixture(1000, 8);
  BootstrapConfig cfg;
  cfg.replicates = 2000;
  cfg.seed = 14;
  const IndexValues g(f.model.fitted);
  const auto [tp, fp] = tp_fp_at_cutoff(f.data, g, 0.5);
  const Eigen::Matrix2d cov = pointwise_bootstrap_cov_fixed(f.data, g, 0.5, cfg);
  const double pi = f.data.pi_hat();
  EXPECT_NEAR(cov(0, 0) / (tp * (1 - tp) / pi), 1.0, 0.15);
  EXPECT_NEAR(cov(1, 1) / (fp * (1 - fp) / (1 - pi)), 1.0, 0.15);
}

TEST(Weighted, RefitCovarianceTracksInfluence) {
  const Fixture f = make_fixture(1000, 9);
  BootstrapConfig cfg;
  cfg.replicates = 1000;
  cfg.seed = 15;
  const Eigen::Matrix2d boot = pointwise_bootstrap_cov(f.data, f.model, 0.5, cfg);
  const InfluenceTable tab = pointwise_influence(f.data, f.model, {0.5}, KernelConfig{});
  const Eigen::Matrix2d an = pointwise_covariance(tab, 0);
  EXPECT_NEAR(boot(0, 0) / an(0, 0), 1.0, 0.25);
  EXPECT_NEAR(boot(1, 1) / an(1, 1), 1.0, 0.25);
}
