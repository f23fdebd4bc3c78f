#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include "rocinf/kernel.hpp"
#include "rocinf/simulation.hpp"

using namespace rocinf;

namespace {

std::vector<double> normal_scores(int m) {
  boost::math::normal z;
  std::vector<double> v;
  for (int i = 1; i <= m; ++i) v.push_back(quantile(z, (i - 0.5) / m));
  return v;
}

double integrate(KernelType k, double power) {
  double s = 0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    const double u = -1.0 + (i + 0.5) * 2.0 / steps;
    s += std::pow(kernel_value(k, u), power) * 2.0 / steps;
  }
  return s;
}

}  // namespace

TEST(KernelFns, IntegrateToOne) {
  for (auto k : {KernelType::biweight, KernelType::epanechnikov, KernelType::triangular}) {
    EXPECT_NEAR(integrate(k, 1.0), 1.0, 1e-6);
    EXPECT_EQ(kernel_value(k, 1.0), 0.0);
    EXPECT_EQ(kernel_value(k, -1.5), 0.0);
  }
}

TEST(KernelFns, CanonicalFactorsFromNumericalMoments) {
  const double gauss = std::pow(0.5 / std::sqrt(M_PI), 0.2);
  for (auto k : {KernelType::biweight, KernelType::epanechnikov, KernelType::triangular}) {
    double mu2 = 0;
    const int steps = 200000;
    for (int i = 0; i < steps; ++i) {
      const double u = -1.0 + (i + 0.5) * 2.0 / steps;
      mu2 += u * u * kernel_value(k, u) * 2.0 / steps;
    }
    const double expected = std::pow(integrate(k, 2.0) / (mu2 * mu2), 0.2) / gauss;
    EXPECT_NEAR(canonical_factor(k), expected, 1e-5);
  }
  EXPECT_NEAR(canonical_factor(KernelType::biweight), 2.6226, 1e-3);
}

TEST(Bandwidth, SilvermanOnNormalScores) {
  const auto v = normal_scores(100);
  // spread is min(sd, IQR / 1.349), both close to 1 for normal scores
  EXPECT_NEAR(silverman_bandwidth(v), 1.06 * std::pow(100.0, -0.2), 0.01);
  EXPECT_NEAR(silverman_bandwidth(v), 0.422, 0.01);
}

TEST(Bandwidth, DegenerateInputs) {
  const std::vector<double> constant(20, 0.4);
  try {
    silverman_bandwidth(constant);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BandwidthDegenerate);
  }
  const Dataset d = draw_sample(DgpSpec{}, 1);
  KernelConfig cfg;
  cfg.bandwidth = 0.0;
  try {
    kernel_support(d, fit_logit(d).fitted, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BandwidthDegenerate);
  }
}

TEST(Bandwidth, DefaultScalesTheRuleOfThumb) {
  const Dataset d = draw_sample(DgpSpec{}, 2);
  const FittedModel m = fit_logit(d);
  KernelConfig plain;
  plain.bandwidth_scale = 1.0;
  const KernelSupport a = kernel_support(d, m.fitted, plain);
  const KernelSupport b = kernel_support(d, m.fitted, KernelConfig{});
  EXPECT_NEAR(b.h1 / a.h1, canonical_factor(KernelType::biweight), 1e-12);
  EXPECT_NEAR(b.h0 / a.h0, canonical_factor(KernelType::biweight), 1e-12);
  EXPECT_NEAR(a.delta, (a.b0 - a.a0) / std::log(double(d.n())), 1e-12);
}

TEST(Density, UniformSampleIsFlatInside) {
  // index uniform on [0, 1] in both classes, so f1 = f0 = 1 and the ratio is 1
  const int n = 20000;
  VectorXd y(n), g(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i % 2;
    g[i] = (i / 2 + 0.5) / (n / 2);
  }
  const Dataset d(y, g);
  const DensityPair dp = density_estimates(d, g, KernelConfig{}, {0.3, 0.5, 0.7});
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(dp.f1[j], 1.0, 0.02);
    EXPECT_NEAR(dp.f0[j], 1.0, 0.02);
    EXPECT_NEAR(dp.ratio[j], 1.0, 0.02);
  }
}

TEST(Density, FrozenNearTheBoundary) {
  const Dataset d = draw_sample(DgpSpec{}, 3);
  const VectorXd p = fit_logit(d).fitted;
  const KernelSupport s = kernel_support(d, p, KernelConfig{});
  const DensityPair inside =
      density_estimates(d, p, KernelConfig{}, {s.a0, s.a0 + 0.5 * s.delta, s.a0 + s.delta});
  EXPECT_EQ(inside.f0[0], inside.f0[2]);
  EXPECT_EQ(inside.f0[1], inside.f0[2]);
  EXPECT_EQ(inside.f1[0], inside.f1[2]);
}

TEST(Gradient, InterceptComponentIsScaledDensity) {
  const Dataset d = draw_sample(DgpSpec{}, 4);
  const FittedModel m = fit_logit(d);
  const KernelConfig cfg;
  const std::vector<double> c{0.4, 0.5, 0.6};
  const GradientPair gp = grad_tp_fp(d, m, cfg, c);
  const KernelSupport s = kernel_support(d, m.fitted, cfg);
  for (std::size_t j = 0; j < c.size(); ++j) {
    double f1 = 0;
    for (int i : d.positives()) f1 += kernel_value(cfg.kernel, (m.fitted[i] - c[j]) / s.h1);
    f1 /= d.n1() * s.h1;
    EXPECT_NEAR(gp.grad_tp(j, 0), c[j] * (1 - c[j]) * f1, 1e-12);
  }
}

TEST(Gradient, OneStepAndIndexFormsAgree) {
  DgpSpec spec;
  spec.n = 5000;
  const Dataset d = draw_sample(spec, 5);
  const FittedModel m = fit_logit(d);
  KernelConfig a, b;
  b.gradient_form = GradientForm::index_gradient;
  const std::vector<double> c{0.33, 0.5, 0.67};
  const GradientPair ga = grad_tp_fp(d, m, a, c), gb = grad_tp_fp(d, m, b, c);
  const double scale = ga.grad_tp.cwiseAbs().maxCoeff();
  EXPECT_LT((ga.grad_tp - gb.grad_tp).cwiseAbs().maxCoeff(), 0.1 * scale);
  EXPECT_LT((ga.grad_fp - gb.grad_fp).cwiseAbs().maxCoeff(), 0.1 * scale);
}

TEST(Gradient, VanishesWhereNoMassIs) {
  const Dataset d = draw_sample(DgpSpec{}, 6);
  const FittedModel m = fit_logit(d);
  KernelConfig cfg;
  cfg.bandwidth = 1e-4;
  const GradientPair gp = grad_tp_fp(d, m, cfg, {1e-9});
  EXPECT_NEAR(gp.grad_tp.row(0).cwiseAbs().maxCoeff(), 0.0, 1e-6);
}
