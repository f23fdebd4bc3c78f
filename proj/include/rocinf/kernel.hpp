#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rocinf/data.hpp"
#include "rocinf/logit.hpp"

namespace rocinf {

enum class KernelType { biweight, epanechnikov, triangular };

/// How the TP/FP gradient is estimated for the logit index.
enum class GradientForm {
  one_step,        // c(1-c) * kernel-weighted sum of x over the class
  index_gradient,  // kernel-weighted sum of grad_beta G = p(1-p) x
};

struct KernelConfig {
  KernelType kernel = KernelType::biweight;
  std::optional<double> bandwidth;  // fixed h for both classes; Silverman per class if empty
  // Multiplies the rule-of-thumb bandwidth. Empty: the kernel's canonical
  // factor relative to the Gaussian, for which the rule of thumb is calibrated.
  std::optional<double> bandwidth_scale;
  std::optional<double> delta;      // density boundary width; (b0 - a0) / log n if empty
  GradientForm gradient_form = GradientForm::one_step;
};

KernelType parse_kernel(const std::string& name);
std::string to_string(KernelType kernel);
GradientForm parse_gradient_form(const std::string& name);
std::string to_string(GradientForm form);

/// Kernel with support [-1, 1].
double kernel_value(KernelType kernel, double u);

/// (R(K) / mu2(K)^2)^(1/5) of `kernel` divided by the same quantity for the
/// Gaussian kernel: the factor turning a Gaussian-kernel bandwidth into an
/// equivalent one for `kernel`.
double canonical_factor(KernelType kernel);

/// 1.06 * min(sd, IQR / 1.349) * m^(-1/5).
double silverman_bandwidth(std::span<const double> values);

/// Bandwidths and boundary geometry derived from the data.
struct KernelSupport {
  double h1 = 0.0, h0 = 0.0;  // bandwidths for the y=1 / y=0 subsamples
  double a0 = 0.0, b0 = 0.0;  // support of the y=0 index
  double delta = 0.0;
};

KernelSupport kernel_support(const Dataset& data, const VectorXd& index, const KernelConfig& cfg);

struct DensityPair {
  std::vector<double> eval_points;
  std::vector<double> f1, f0;
  std::vector<double> ratio;
};

/// Class-conditional densities of `index`, frozen at the interior edge
/// inside [a0, a0 + delta] and [b0 - delta, b0].
DensityPair density_estimates(const Dataset& data, const VectorXd& index, const KernelConfig& cfg,
                              const std::vector<double>& eval);

struct GradientPair {
  MatrixXd grad_tp;  // one row per cutoff, (k+1) columns
  MatrixXd grad_fp;
};

/// Kernel estimates of grad_beta TP(c, beta_hat) and grad_beta FP(c, beta_hat)
/// for the logit index, frozen inside [a0, a0 + h] and [b0 - h, b0].
GradientPair grad_tp_fp(const Dataset& data, const FittedModel& model, const KernelConfig& cfg,
                        const std::vector<double>& eval);

}  // namespace rocinf
