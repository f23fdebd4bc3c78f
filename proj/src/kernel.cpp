#include "rocinf/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rocinf {

KernelType parse_kernel(const std::string& name) {
  if (name == "biweight") return KernelType::biweight;
  if (name == "epanechnikov") return KernelType::epanechnikov;
  if (name == "triangular") return KernelType::triangular;
  throw Error(ErrorCode::InvalidConfig, "unknown kernel '" + name + "'");
}

std::string to_string(KernelType kernel) {
  switch (kernel) {
    case KernelType::biweight: return "biweight";
    case KernelType::epanechnikov: return "epanechnikov";
    case KernelType::triangular: return "triangular";
  }
  return "unknown";
}

GradientForm parse_gradient_form(const std::string& name) {
  if (name == "one_step") return GradientForm::one_step;
  if (name == "index_gradient") return GradientForm::index_gradient;
  throw Error(ErrorCode::InvalidConfig, "unknown gradient form '" + name + "'");
}

std::string to_string(GradientForm form) {
  return form == GradientForm::one_step ? "one_step" : "index_gradient";
}

double kernel_value(KernelType kernel, double u) {
  const double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  switch (kernel) {
    case KernelType::biweight: {
      const double s = 1.0 - u * u;
      return 0.9375 * s * s;
    }
    case KernelType::epanechnikov: return 0.75 * (1.0 - u * u);
    case KernelType::triangular: return 1.0 - a;
  }
  return 0.0;
}

double canonical_factor(KernelType kernel) {
  // roughness R(K) and second moment mu2(K)
  double r = 0.0, mu2 = 0.0;
  switch (kernel) {
    case KernelType::biweight: r = 5.0 / 7.0; mu2 = 1.0 / 7.0; break;
    case KernelType::epanechnikov: r = 0.6; mu2 = 0.2; break;
    case KernelType::triangular: r = 2.0 / 3.0; mu2 = 1.0 / 6.0; break;
  }
  const double gaussian = std::pow(0.5 / std::sqrt(std::numbers::pi), 0.2);
  return std::pow(r / (mu2 * mu2), 0.2) / gaussian;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double p) {
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<double> class_values(const Dataset& data, const VectorXd& index, bool positive) {
  std::vector<double> out;
  for (int i : positive ? data.positives() : data.negatives()) out.push_back(index[i]);
  return out;
}

// Evaluation point after the boundary freeze; points outside [a0, b0] are
// left to the primary estimator.
double freeze(double c, double a0, double b0, double width) {
  if (c < a0 || c > b0) return c;
  const double lo = a0 + width, hi = b0 - width;
  if (lo > hi) return 0.5 * (a0 + b0);
  return std::clamp(c, lo, hi);
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  const std::size_t m = values.size();
  if (m < 2) throw Error(ErrorCode::BandwidthDegenerate, "need at least two values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  if (v.front() == v.back() || !(sd > 0.0))
    throw Error(ErrorCode::BandwidthDegenerate, "values are constant");
  const double iqr = quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.349) : sd;
  return 1.06 * spread * std::pow(static_cast<double>(m), -0.2);
}

KernelSupport kernel_support(const Dataset& data, const VectorXd& index, const KernelConfig& cfg) {
  if (index.size() != data.n())
    throw Error(ErrorCode::DimensionMismatch, "index length differs from n");
  if (data.n1() < 10 || data.n0() < 10)
    throw Error(ErrorCode::TooFewPerClass, "kernel estimation needs at least 10 per class");
  const auto pos = class_values(data, index, true);
  const auto neg = class_values(data, index, false);
  KernelSupport s;
  if (cfg.bandwidth) {
    if (!(*cfg.bandwidth > 0.0)) throw Error(ErrorCode::BandwidthDegenerate, "bandwidth <= 0");
    s.h1 = s.h0 = *cfg.bandwidth;
  } else {
    const double scale = cfg.bandwidth_scale.value_or(canonical_factor(cfg.kernel));
    if (!(scale > 0.0)) throw Error(ErrorCode::BandwidthDegenerate, "bandwidth scale <= 0");
    s.h1 = scale * silverman_bandwidth(pos);
    s.h0 = scale * silverman_bandwidth(neg);
  }
  const auto [mn, mx] = std::minmax_element(neg.begin(), neg.end());
  s.a0 = *mn;
  s.b0 = *mx;
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0)) throw Error(ErrorCode::InvalidConfig, "delta must be positive");
    s.delta = *cfg.delta;
  } else {
    s.delta = (s.b0 - s.a0) / std::log(static_cast<double>(data.n()));
  }
  return s;
}

DensityPair density_estimates(const Dataset& data, const VectorXd& index, const KernelConfig& cfg,
                              const std::vector<double>& eval) {
  const KernelSupport s = kernel_support(data, index, cfg);
  auto primary = [&](double c, bool positive, double h) {
    double sum = 0.0;
    for (int i : positive ? data.positives() : data.negatives())
      sum += kernel_value(cfg.kernel, (index[i] - c) / h);
    const double count = positive ? data.n1() : data.n0();
    return sum / (count * h);
  };
  DensityPair out;
  out.eval_points = eval;
  for (double c : eval) {
    const double cc = freeze(c, s.a0, s.b0, s.delta);
    const double f1 = primary(cc, true, s.h1);
    const double f0 = primary(cc, false, s.h0);
    out.f1.push_back(f1);
    out.f0.push_back(f0);
    out.ratio.push_back(f1 / std::max(f0, 1e-12));
  }
  return out;
}

GradientPair grad_tp_fp(const Dataset& data, const FittedModel& model, const KernelConfig& cfg,
                        const std::vector<double>& eval) {
  const VectorXd& p = model.fitted;
  if (p.size() != data.n())
    throw Error(ErrorCode::DimensionMismatch, "model was fitted on a different dataset");
  const KernelSupport s = kernel_support(data, p, cfg);
  const int dim = data.k() + 1;
  const auto m = static_cast<Eigen::Index>(eval.size());
  GradientPair out{MatrixXd::Zero(m, dim), MatrixXd::Zero(m, dim)};

  auto accumulate = [&](double c, bool positive, double h, auto row) {
    const double cc = freeze(c, s.a0, s.b0, h);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
    for (int i : positive ? data.positives() : data.negatives()) {
      const double k = kernel_value(cfg.kernel, (p[i] - cc) / h);
      if (k == 0.0) continue;
      const double weight = cfg.gradient_form == GradientForm::one_step ? k : k * p[i] * (1.0 - p[i]);
      acc[0] += weight;
      acc.tail(dim - 1) += weight * data.x().row(i).transpose();
    }
    const double count = positive ? data.n1() : data.n0();
    acc /= count * h;
    if (cfg.gradient_form == GradientForm::one_step) acc *= cc * (1.0 - cc);
    row = acc.transpose();
  };

  for (Eigen::Index j = 0; j < m; ++j) {
    const double c = eval[static_cast<std::size_t>(j)];
    accumulate(c, true, s.h1, out.grad_tp.row(j));
    accumulate(c, false, s.h0, out.grad_fp.row(j));
  }
  return out;
}

}  // namespace rocinf
