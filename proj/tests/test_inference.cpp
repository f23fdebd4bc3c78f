#include <gtest/gtest.h>

#include "rocinf/inference.hpp"
#include "rocinf/simulation.hpp"

using namespace rocinf;

namespace {

ProcedureConfig small_config(std::uint64_t seed, int reps = 300) {
  ProcedureConfig cfg;
  cfg.grid.tau_l = 0.1;
  cfg.grid.tau_u = 0.9;
  cfg.grid.step = 0.05;
  cfg.boot.replicates = reps;
  cfg.boot.seed = seed;
  return cfg;
}

ModelSpec spec_of(std::vector<int> cols, const std::string& transform = "identity") {
  return {std::move(cols), make_transform(transform), transform};
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no rocinf::Error thrown";
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST(Targets, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_target("tp-fp")), "tp-fp");
  const LinearTarget t = parse_target("linear:2,-0.5");
  EXPECT_EQ(t.a, 2.0);
  EXPECT_EQ(t.b, -0.5);
  EXPECT_EQ(code_of([] { parse_target("roc"); }), ErrorCode::InvalidConfig);
  EXPECT_NEAR(normal_critical(0.9), 1.6448536, 1e-6);
}

TEST(PointwiseCi, ConventionalFormula) {
  const Dataset d = draw_sample(DgpSpec{}, 1);
  const FittedModel m = fit_logit(d);
  const PointwiseCI ci = pointwise_ci(d, m, 0.5, LinearTarget::tp_minus_fp(),
                                      CiMethod::conventional_estimated_index, 0.9);
  const double pi = d.pi_hat();
  const double var = ci.tp * (1 - ci.tp) / pi + ci.fp * (1 - ci.fp) / (1 - pi);
  EXPECT_NEAR(ci.se, std::sqrt(var / d.n()), 1e-14);
  EXPECT_NEAR(ci.upper - ci.estimate, 1.6448536 * ci.se, 1e-6);
  EXPECT_DOUBLE_EQ(ci.estimate, ci.tp - ci.fp);
}

TEST(PointwiseCi, CorrectedUsesInfluenceCovariance) {
  const Dataset d = draw_sample(DgpSpec{}, 2);
  const FittedModel m = fit_logit(d);
  const LinearTarget w{1.0, -0.5};
  const PointwiseCI ci = pointwise_ci(d, m, 0.6, w, CiMethod::corrected_analytic, 0.9);
  const Eigen::Matrix2d cov = pointwise_covariance(pointwise_influence(d, m, {0.6}, {}), 0);
  const double var = cov(0, 0) + 0.25 * cov(1, 1) - cov(0, 1);
  EXPECT_NEAR(ci.se, std::sqrt(var / d.n()), 1e-14);
}

TEST(PointwiseCi, CorrectionWidensFarCutoff) {
  DgpSpec spec;
  spec.n = 2000;
  const Dataset d = draw_sample(spec, 3);
  const FittedModel m = fit_logit(d);
  const auto conv = pointwise_ci(d, m, 0.8, LinearTarget::tp(),
                                 CiMethod::conventional_estimated_index, 0.9);
  const auto corr = pointwise_ci(d, m, 0.8, LinearTarget::tp(), CiMethod::corrected_analytic, 0.9);
  EXPECT_GT(corr.se, 1.3 * conv.se);
}

TEST(PointwiseCi, BoundaryEstimate) {
  const Dataset d = draw_sample(DgpSpec{}, 4);
  const FittedModel m = fit_logit(d);
  EXPECT_EQ(code_of([&] {
              pointwise_ci(d, m, 1e-6, LinearTarget::tp(), CiMethod::corrected_analytic, 0.9);
            }),
            ErrorCode::BoundaryEstimate);
  // at the largest negative index FP is 0, which only matters when FP carries weight
  double c = 0.0;
  for (int i : d.negatives()) c = std::max(c, m.fitted[i]);
  const IndexValues g(m.fitted);
  ASSERT_GT(tp_fp_at_cutoff(d, g, c).first, 0.0);
  EXPECT_NO_THROW(pointwise_ci_fixed(d, g, c, LinearTarget::tp(), 0.9));
  EXPECT_EQ(code_of([&] { pointwise_ci_fixed(d, g, c, LinearTarget::tp_minus_fp(), 0.9); }),
            ErrorCode::BoundaryEstimate);
}

TEST(Band, WiderThanPointwiseAndOneSidedUpper) {
  const Dataset d = draw_sample(DgpSpec{}, 5);
  const FittedModel m = fit_logit(d);
  ProcedureConfig cfg = small_config(21);
  const BandResult two = uniform_band(d, m, cfg);
  EXPECT_GT(two.critical_value, normal_critical(1.0 - cfg.grid.alpha));
  for (std::size_t j = 0; j < two.t_grid.size(); ++j) {
    EXPECT_LE(two.lower[j], two.r_hat[j]);
    EXPECT_GE(two.upper[j], two.r_hat[j]);
    EXPECT_NEAR(two.upper[j] - two.r_hat[j],
                two.critical_value * two.sigma_eps[j] / std::sqrt(500.0), 1e-14);
  }
  cfg.mode = SupMode::one_sided;
  const BandResult one = uniform_band(d, m, cfg);
  EXPECT_LT(one.critical_value, two.critical_value);
  for (std::size_t j = 0; j < one.t_grid.size(); ++j) {
    EXPECT_TRUE(std::isinf(one.upper[j]) && one.upper[j] > 0);
    EXPECT_GE(one.lower[j], two.lower[j]);
  }
}

TEST(Band, WeightedSchemeRuns) {
  const Dataset d = draw_sample(DgpSpec{}, 6);
  const FittedModel m = fit_logit(d);
  ProcedureConfig cfg = small_config(22, 100);
  cfg.scheme = Scheme::weighted;
  const BandResult b = uniform_band(d, m, cfg);
  EXPECT_EQ(b.replicates, 100);
  EXPECT_GT(b.critical_value, 1.0);
  for (double s : b.sigma_eps) EXPECT_GE(s, cfg.grid.epsilon);
}

TEST(Band, InvariantToMonotoneTransforms) {
  const Dataset d = draw_sample(DgpSpec{}, 7);
  const FittedModel m = fit_logit(d);
  for (Scheme scheme : {Scheme::multiplier, Scheme::weighted}) {
    ProcedureConfig cfg = small_config(23, 80);
    cfg.scheme = scheme;
    const BandResult base = uniform_band(d, m, cfg);
    for (const char* name : {"exp", "cube"}) {
      const BandResult b = uniform_band(d, m, cfg, make_transform(name));
      EXPECT_EQ(b.r_hat, base.r_hat) << name;
      EXPECT_EQ(b.lower, base.lower) << name;
      EXPECT_EQ(b.upper, base.upper) << name;
      EXPECT_EQ(b.auc, base.auc) << name;
    }
  }
}

TEST(Dominance, IdenticalModelsAreDegenerate) {
  const Dataset d = draw_sample(DgpSpec{}, 8);
  const FittedSpec a = fit_spec(d, spec_of({0, 1}));
  for (Scheme scheme : {Scheme::multiplier, Scheme::weighted}) {
    ProcedureConfig cfg = small_config(24, 50);
    cfg.scheme = scheme;
    EXPECT_EQ(code_of([&] { dominance_test(a, a, cfg); }), ErrorCode::DegenerateDifference);
  }
}

TEST(Dominance, DetectsBetterModel) {
  const Dataset d = draw_sample(DgpSpec{}, 9);
  const FittedSpec weak = fit_spec(d, spec_of({0}));
  const FittedSpec full = fit_spec(d, spec_of({0, 1, 2}));
  ProcedureConfig cfg = small_config(25);
  cfg.grid.alpha = 0.05;
  const DominanceResult r = dominance_test(weak, full, cfg);
  EXPECT_TRUE(r.reject);
  EXPECT_GT(r.statistic, r.critical_value);
  // reversed roles: the full model dominates, so no rejection
  EXPECT_FALSE(dominance_test(full, weak, cfg).reject);
}

TEST(Dominance, InvariantToMonotoneTransforms) {
  const Dataset d = draw_sample(DgpSpec{}, 10);
  ProcedureConfig cfg = small_config(26, 100);
  const DominanceResult base =
      dominance_test(fit_spec(d, spec_of({0})), fit_spec(d, spec_of({0, 2})), cfg);
  const DominanceResult t =
      dominance_test(fit_spec(d, spec_of({0}, "exp")), fit_spec(d, spec_of({0, 2}, "cube")), cfg);
  EXPECT_EQ(base.statistic, t.statistic);
  EXPECT_EQ(base.critical_value, t.critical_value);
  EXPECT_EQ(base.reject, t.reject);
}

TEST(AucCompare, IdenticalModelsWarn) {
  const Dataset d = draw_sample(DgpSpec{}, 11);
  const FittedSpec a = fit_spec(d, spec_of({0, 1, 2}));
  const AucComparison r = auc_compare(a, a, small_config(27, 50));
  EXPECT_TRUE(r.degenerate_warning);
  EXPECT_EQ(r.diff, 0.0);
  EXPECT_LT(r.v_hat_a, kDegenerateVariance);
}

TEST(AucCompare, FullRangeUsesMannWhitney) {
  const Dataset d = draw_sample(DgpSpec{}, 12);
  const FittedSpec a = fit_spec(d, spec_of({0}));
  const FittedSpec b = fit_spec(d, spec_of({0, 1, 2}));
  ProcedureConfig cfg = small_config(28, 50);
  cfg.grid.tau_l = 0.0;
  cfg.grid.tau_u = 1.0;
  cfg.grid.step = 0.01;
  const AucComparison r = auc_compare(a, b, cfg);
  EXPECT_TRUE(r.full_range);
  EXPECT_EQ(r.auc1, auc(a.data, IndexValues(a.model.fitted)));
  EXPECT_EQ(r.auc2, auc(b.data, IndexValues(b.model.fitted)));
  EXPECT_GT(r.diff, 0.0);
  EXPECT_NEAR(r.z, r.diff / r.se_diff, 1e-12);
  EXPECT_GT(r.p_value, 0.0);
  EXPECT_LT(r.p_value, 0.05);
}

TEST(FitSpec, MisalignedModelsRejected) {
  const Dataset d1 = draw_sample(DgpSpec{}, 13);
  DgpSpec other;
  other.n = 300;
  const Dataset d2 = draw_sample(other, 14);
  EXPECT_EQ(code_of([&] {
              dominance_test(fit_spec(d1, spec_of({0})), fit_spec(d2, spec_of({0})),
                             small_config(29, 20));
            }),
            ErrorCode::DimensionMismatch);
}
