#include "rocinf/inference.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rocinf {

LinearTarget parse_target(const std::string& text) {
  if (text == "tp" || text == "TP") return LinearTarget::tp();
  if (text == "fp" || text == "FP") return LinearTarget::fp();
  if (text == "tp-fp" || text == "TP-FP") return LinearTarget::tp_minus_fp();
  const std::string prefix = "linear:";
  if (text.rfind(prefix, 0) == 0) {
    std::istringstream in(text.substr(prefix.size()));
    LinearTarget t;
    char comma = 0;
    if (in >> t.a >> comma >> t.b && comma == ',' && in.peek() == EOF) return t;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown target '" + text + "'");
}

std::string to_string(const LinearTarget& target) {
  if (target.a == 1.0 && target.b == 0.0) return "tp";
  if (target.a == 0.0 && target.b == 1.0) return "fp";
  if (target.a == 1.0 && target.b == -1.0) return "tp-fp";
  char buf[80];
  std::snprintf(buf, sizeof buf, "linear:%.17g,%.17g", target.a, target.b);
  return buf;
}

CiMethod parse_ci_method(const std::string& name) {
  if (name == "conventional_fixed_index") return CiMethod::conventional_fixed_index;
  if (name == "conventional_estimated_index" || name == "conventional")
    return CiMethod::conventional_estimated_index;
  if (name == "corrected_analytic" || name == "corrected") return CiMethod::corrected_analytic;
  if (name == "corrected_bootstrap") return CiMethod::corrected_bootstrap;
  throw Error(ErrorCode::InvalidConfig, "unknown CI method '" + name + "'");
}

std::string to_string(CiMethod method) {
  switch (method) {
    case CiMethod::conventional_fixed_index: return "conventional_fixed_index";
    case CiMethod::conventional_estimated_index: return "conventional_estimated_index";
    case CiMethod::corrected_analytic: return "corrected_analytic";
    case CiMethod::corrected_bootstrap: return "corrected_bootstrap";
  }
  return "unknown";
}

double normal_critical(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw Error(ErrorCode::InvalidConfig, "confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 1.0 - 0.5 * (1.0 - level));
}

namespace {

void check_interior(const LinearTarget& target, double tp, double fp) {
  auto boundary = [](double v) { return v <= 0.0 || v >= 1.0; };
  if ((target.a != 0.0 && boundary(tp)) || (target.b != 0.0 && boundary(fp)))
    throw Error(ErrorCode::BoundaryEstimate, "TP or FP estimate is 0 or 1 at this cutoff");
}

PointwiseCI finish(double c, const LinearTarget& target, CiMethod method, double level, double tp,
                   double fp, double variance, int n) {
  if (!std::isfinite(variance) || variance < 0.0)
    throw Error(ErrorCode::VarianceUnavailable, "variance estimate is not usable");
  PointwiseCI ci;
  ci.cutoff = c;
  ci.target = target;
  ci.method = method;
  ci.level = level;
  ci.tp = tp;
  ci.fp = fp;
  ci.estimate = target.a * tp + target.b * fp;
  ci.se = std::sqrt(variance / n);
  const double half = normal_critical(level) * ci.se;
  ci.lower = ci.estimate - half;
  ci.upper = ci.estimate + half;
  return ci;
}

double conventional_variance(const Dataset& data, const LinearTarget& target, double tp,
                             double fp) {
  const double pi = data.pi_hat();
  return target.a * target.a * tp * (1.0 - tp) / pi +
         target.b * target.b * fp * (1.0 - fp) / (1.0 - pi);
}

double quadratic(const Eigen::Matrix2d& cov, const LinearTarget& target) {
  const Eigen::Vector2d w(target.a, target.b);
  return w.dot(cov * w);
}

VectorXd apply(const VectorXd& p, const MonotoneMap& transform) {
  if (!transform) return p;
  return p.unaryExpr([&](double v) { return transform(v); });
}

std::vector<double> floor_sigma(const std::vector<double>& variance, double epsilon,
                                std::vector<double>* raw) {
  std::vector<double> out;
  for (double v : variance) {
    const double s = std::sqrt(std::max(v, 0.0));
    if (raw) raw->push_back(s);
    out.push_back(std::max(s, epsilon));
  }
  return out;
}

}  // namespace

PointwiseCI pointwise_ci_fixed(const Dataset& data, const IndexValues& g, double c,
                               const LinearTarget& target, double level) {
  const auto [tp, fp] = tp_fp_at_cutoff(data, g, c);
  check_interior(target, tp, fp);
  return finish(c, target, CiMethod::conventional_fixed_index, level, tp, fp,
                conventional_variance(data, target, tp, fp), data.n());
}

PointwiseCI pointwise_ci(const Dataset& data, const FittedModel& model, double c,
                         const LinearTarget& target, CiMethod method, double level,
                         const ProcedureConfig& cfg) {
  if (method == CiMethod::conventional_fixed_index) {
    return pointwise_ci_fixed(data, IndexValues(model.fitted), c, target, level);
  }
  const auto [tp, fp] = tp_fp_at_cutoff(data, IndexValues(model.fitted), c);
  check_interior(target, tp, fp);
  double variance = 0.0;
  switch (method) {
    case CiMethod::conventional_estimated_index:
      variance = conventional_variance(data, target, tp, fp);
      break;
    case CiMethod::corrected_analytic: {
      const InfluenceTable table = pointwise_influence(data, model, {c}, cfg.kernel);
      variance = quadratic(pointwise_covariance(table, 0), target);
      break;
    }
    case CiMethod::corrected_bootstrap:
      variance = quadratic(pointwise_bootstrap_cov(data, model, c, cfg.boot), target);
      break;
    case CiMethod::conventional_fixed_index:
      break;
  }
  return finish(c, target, method, level, tp, fp, variance, data.n());
}

BandResult uniform_band(const Dataset& data, const FittedModel& model, const ProcedureConfig& cfg,
                        const MonotoneMap& transform) {
  cfg.grid.validate();
  const std::vector<double> grid = make_t_grid(cfg.grid);
  const VectorXd g = apply(model.fitted, transform);
  const RocCurve roc = roc_at_grid(data, IndexValues(g), grid);

  BandResult out;
  out.t_grid = grid;
  out.r_hat = roc.r_values;
  out.mode = cfg.mode;
  out.level = 1.0 - cfg.grid.alpha;
  out.scheme = cfg.scheme;
  out.auc = roc.auc;

  BootstrapDraws draws;
  if (cfg.scheme == Scheme::multiplier) {
    const InfluenceTable table = uniform_influence(data, model, g, roc, cfg.kernel);
    const SigmaEstimate sig = analytic_sigma(table.psi_r, cfg.grid.epsilon);
    out.sigma = sig.sigma;
    out.sigma_eps = sig.sigma_eps;
    draws = multiplier_bootstrap(table.psi_r, grid, cfg.boot);
  } else {
    draws = weighted_bootstrap(data, model, grid, cfg.boot, transform);
    out.sigma_eps = floor_sigma(draws.column_variance(), cfg.grid.epsilon, &out.sigma);
  }
  out.replicates = draws.replicates;
  out.failures = draws.failures;
  out.centering_flag = draws.centering_flag;

  const SupStatistics sups = sup_statistics(draws.draws, out.sigma_eps, cfg.mode);
  out.critical_value = sups.critical_value(cfg.grid.alpha);
  const double root_n = std::sqrt(static_cast<double>(data.n()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double half = out.critical_value * out.sigma_eps[j] / root_n;
    out.lower.push_back(out.r_hat[j] - half);
    out.upper.push_back(cfg.mode == SupMode::two_sided
                            ? out.r_hat[j] + half
                            : std::numeric_limits<double>::infinity());
  }
  return out;
}

FittedSpec fit_spec(const Dataset& full, const ModelSpec& spec) {
  Dataset data = spec.columns.empty() ? full : full.select(spec.columns);
  FittedModel model = fit_logit(data);
  return {std::move(data), std::move(model), spec.transform};
}

namespace {

struct DifferenceProcess {
  std::vector<double> grid;
  RocCurve roc1, roc2;
  MatrixXd psi_diff;   // multiplier scheme only
  MatrixXd draws;      // B x m draws of the difference process
  std::vector<double> variance;
  int replicates = 0;
  int failures = 0;
};

DifferenceProcess difference_process(const FittedSpec& m1, const FittedSpec& m2,
                                     const ProcedureConfig& cfg) {
  cfg.grid.validate();
  if (m1.data.n() != m2.data.n() || m1.data.y() != m2.data.y())
    throw Error(ErrorCode::DimensionMismatch, "models were fitted on different samples");
  DifferenceProcess d;
  d.grid = make_t_grid(cfg.grid);
  const VectorXd g1 = apply(m1.model.fitted, m1.transform);
  const VectorXd g2 = apply(m2.model.fitted, m2.transform);
  d.roc1 = roc_at_grid(m1.data, IndexValues(g1), d.grid);
  d.roc2 = roc_at_grid(m2.data, IndexValues(g2), d.grid);

  if (cfg.scheme == Scheme::multiplier) {
    const InfluenceTable t1 = uniform_influence(m1.data, m1.model, g1, d.roc1, cfg.kernel);
    const InfluenceTable t2 = uniform_influence(m2.data, m2.model, g2, d.roc2, cfg.kernel);
    d.psi_diff = t2.psi_r - t1.psi_r;
    const double n = static_cast<double>(d.psi_diff.rows());
    for (Eigen::Index j = 0; j < d.psi_diff.cols(); ++j)
      d.variance.push_back(d.psi_diff.col(j).squaredNorm() / n);
    BootstrapDraws draws = multiplier_bootstrap(d.psi_diff, d.grid, cfg.boot);
    d.draws = std::move(draws.draws);
    d.replicates = draws.replicates;
  } else {
    std::vector<RefitModel> models{{&m1.data, &m1.model, m1.transform, d.roc1.r_values},
                                   {&m2.data, &m2.model, m2.transform, d.roc2.r_values}};
    auto joint = weighted_bootstrap_joint(models, d.grid, cfg.boot);
    BootstrapDraws diff = joint[1];
    diff.draws -= joint[0].draws;
    d.variance = diff.column_variance();
    d.draws = std::move(diff.draws);
    d.replicates = diff.replicates;
    d.failures = diff.failures;
  }
  return d;
}

}  // namespace

DominanceResult dominance_test(const FittedSpec& m1, const FittedSpec& m2,
                               const ProcedureConfig& cfg) {
  const DifferenceProcess d = difference_process(m1, m2, cfg);
  const double eps = cfg.grid.epsilon;
  DominanceResult out;
  out.alpha = cfg.grid.alpha;
  out.t_grid = d.grid;
  out.r_hat1 = d.roc1.r_values;
  out.r_hat2 = d.roc2.r_values;
  out.scheme = cfg.scheme;
  out.replicates = d.replicates;
  out.failures = d.failures;
  std::vector<double> raw;
  out.sigma_rd = floor_sigma(d.variance, eps, &raw);
  if (std::all_of(raw.begin(), raw.end(), [&](double s) { return s < eps; }))
    throw Error(ErrorCode::DegenerateDifference,
                "difference process is degenerate on the whole grid");

  const double root_n = std::sqrt(static_cast<double>(m1.data.n()));
  out.statistic = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.grid.size(); ++j) {
    const double s = root_n * (out.r_hat2[j] - out.r_hat1[j]) / out.sigma_rd[j];
    if (s > out.statistic) {
      out.statistic = s;
      out.argmax_t = d.grid[j];
    }
  }
  const SupStatistics sups = sup_statistics(d.draws, out.sigma_rd, SupMode::one_sided);
  out.critical_value = sups.critical_value(cfg.grid.alpha);
  out.reject = out.statistic > out.critical_value;
  return out;
}

AucComparison auc_compare(const FittedSpec& m1, const FittedSpec& m2, const ProcedureConfig& cfg) {
  const DifferenceProcess d = difference_process(m1, m2, cfg);
  AucComparison out;
  out.full_range = cfg.grid.tau_l <= 0.0 && cfg.grid.tau_u >= 1.0;
  if (out.full_range) {
    out.auc1 = d.roc1.auc;
    out.auc2 = d.roc2.auc;
  } else {
    out.auc1 = trapezoid(d.grid, d.roc1.r_values);
    out.auc2 = trapezoid(d.grid, d.roc2.r_values);
  }
  out.diff = out.auc2 - out.auc1;

  auto integrals = [&](const MatrixXd& rows) {
    std::vector<double> v(static_cast<std::size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const VectorXd row = rows.row(i).transpose();
      v[static_cast<std::size_t>(i)] = trapezoid(d.grid, std::span<const double>(row.data(), row.size()));
    }
    return v;
  };
  if (cfg.scheme == Scheme::multiplier) {
    for (double a : integrals(d.psi_diff)) out.v_hat_a += a * a;
    out.v_hat_a /= static_cast<double>(d.psi_diff.rows());
  } else {
    const auto v = integrals(d.draws);
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= static_cast<double>(v.size());
    for (double a : v) out.v_hat_a += (a - mean) * (a - mean);
    out.v_hat_a /= static_cast<double>(v.size());
  }
  out.degenerate_warning = out.v_hat_a < kDegenerateVariance;
  out.se_diff = std::sqrt(out.v_hat_a / static_cast<double>(m1.data.n()));
  if (out.se_diff > 0.0) {
    out.z = out.diff / out.se_diff;
    out.p_value = 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(),
                                                                 std::abs(out.z)));
  }
  return out;
}

}  // namespace rocinf
