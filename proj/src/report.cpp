#include "rocinf/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace rocinf {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

namespace {

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

json numbers(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

}  // namespace

json to_json(const GridConfig& grid) {
  return {{"tau_l", grid.tau_l}, {"tau_u", grid.tau_u}, {"step", grid.step},
          {"epsilon", grid.epsilon}, {"alpha", grid.alpha}};
}

json to_json(const KernelConfig& kernel) {
  json out = {{"kernel", to_string(kernel.kernel)},
              {"gradient_form", to_string(kernel.gradient_form)}};
  out["bandwidth"] = kernel.bandwidth ? json(*kernel.bandwidth) : json(nullptr);
  out["delta"] = kernel.delta ? json(*kernel.delta) : json(nullptr);
  out["bandwidth_scale"] = kernel.bandwidth_scale ? json(*kernel.bandwidth_scale) : json(nullptr);
  return out;
}

json to_json(const BootstrapConfig& boot) {
  return {{"replicates", boot.replicates},
          {"seed", boot.seed},
          {"weight_law", to_string(boot.weight_law)},
          {"max_redraws", boot.max_redraws},
          {"max_failure_rate", boot.max_failure_rate}};
}

json to_json(const ProcedureConfig& cfg) {
  return {{"grid", to_json(cfg.grid)},
          {"kernel", to_json(cfg.kernel)},
          {"scheme", to_string(cfg.scheme)},
          {"boot", to_json(cfg.boot)},
          {"mode", to_string(cfg.mode)}};
}

json to_json(const DgpSpec& spec) {
  return {{"beta_true", numbers(spec.beta_true)},
          {"law", to_string(spec.law)},
          {"link", to_string(spec.link)},
          {"n", spec.n},
          {"noise_predictors", spec.noise_predictors}};
}

json to_json(const RocCurve& roc) {
  return {{"t", numbers(roc.t_grid)}, {"r", numbers(roc.r_values)},
          {"c_hat", numbers(roc.c_hat)}, {"auc", roc.auc}};
}

json to_json(const FittedModel& model) {
  json se = json::array();
  const double n = static_cast<double>(model.psi_beta.rows());
  for (Eigen::Index j = 0; j < model.v_hat.rows(); ++j)
    se.push_back(std::sqrt(model.v_hat(j, j) / n));
  return {{"beta_hat", numbers(model.beta_hat)}, {"se", se},
          {"loglik", model.loglik}, {"iterations", model.iterations},
          {"link", model.link}};
}

json to_json(const PointwiseCI& ci) {
  return {{"cutoff", ci.cutoff}, {"target", to_string(ci.target)},
          {"method", to_string(ci.method)}, {"level", ci.level},
          {"estimate", ci.estimate}, {"se", ci.se},
          {"lower", ci.lower}, {"upper", ci.upper},
          {"tp", ci.tp}, {"fp", ci.fp}};
}

json to_json(const BandResult& band) {
  return {{"t", numbers(band.t_grid)},
          {"r_hat", numbers(band.r_hat)},
          {"sigma", numbers(band.sigma)},
          {"sigma_eps", numbers(band.sigma_eps)},
          {"critical_value", band.critical_value},
          {"lower", numbers(band.lower)},
          {"upper", numbers(band.upper)},
          {"mode", to_string(band.mode)},
          {"level", band.level},
          {"scheme", to_string(band.scheme)},
          {"replicates", band.replicates},
          {"failures", band.failures},
          {"centering_flag", band.centering_flag},
          {"auc", band.auc}};
}

json to_json(const DominanceResult& r) {
  return {{"statistic", r.statistic},
          {"critical_value", r.critical_value},
          {"reject", r.reject},
          {"alpha", r.alpha},
          {"argmax_t", r.argmax_t},
          {"t", numbers(r.t_grid)},
          {"r_hat1", numbers(r.r_hat1)},
          {"r_hat2", numbers(r.r_hat2)},
          {"sigma_rd", numbers(r.sigma_rd)},
          {"scheme", to_string(r.scheme)},
          {"replicates", r.replicates},
          {"failures", r.failures}};
}

json to_json(const AucComparison& r) {
  return {{"auc1", r.auc1}, {"auc2", r.auc2}, {"diff", r.diff},
          {"se_diff", r.se_diff}, {"z", r.z}, {"p_value", r.p_value},
          {"v_hat_a", r.v_hat_a}, {"degenerate_warning", r.degenerate_warning},
          {"full_range", r.full_range}};
}

json to_json(const CoverageReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells)
    cells.push_back({{"cutoff", c.cutoff}, {"target", to_string(c.target)},
                     {"method", to_string(c.method)}, {"truth", c.truth},
                     {"nominal", c.nominal}, {"coverage", c.coverage},
                     {"mc_se", c.mc_se}, {"covered", c.covered},
                     {"boundary", c.boundary}, {"replications", c.replications}});
  return {{"cells", cells}, {"requested", report.requested},
          {"failures", report.failures}, {"seed", report.seed}};
}

json to_json(const ExperimentSummary& s) {
  return {{"experiment", to_string(s.kind)}, {"requested", s.requested},
          {"valid", s.valid}, {"failures", s.failures}, {"hits", s.hits},
          {"rate", s.rate}, {"mc_se", s.mc_se}, {"mean_statistic", s.mean_statistic}};
}

std::string roc_csv(const RocCurve& roc) {
  std::ostringstream out;
  out << "t,r,c_hat\n";
  for (std::size_t j = 0; j < roc.t_grid.size(); ++j)
    out << format_double(roc.t_grid[j]) << ',' << format_double(roc.r_values[j]) << ','
        << format_double(roc.c_hat[j]) << '\n';
  return out.str();
}

std::string band_csv(const BandResult& band) {
  std::ostringstream out;
  out << "t,r_hat,lower,upper\n";
  for (std::size_t j = 0; j < band.t_grid.size(); ++j)
    out << format_double(band.t_grid[j]) << ',' << format_double(band.r_hat[j]) << ','
        << format_double(band.lower[j]) << ',' << format_double(band.upper[j]) << '\n';
  return out.str();
}

std::string coverage_csv(const CoverageReport& report) {
  // Columns keep first-seen order of (target, method); rows follow cutoffs.
  std::vector<std::string> targets;
  std::vector<std::pair<std::string, std::string>> columns;
  std::vector<double> cutoffs;
  std::map<std::pair<double, std::string>, double> truth;
  std::map<std::tuple<double, std::string, std::string>, const CoverageCell*> cell;
  for (const auto& c : report.cells) {
    const std::string t = to_string(c.target), m = to_string(c.method);
    if (std::find(cutoffs.begin(), cutoffs.end(), c.cutoff) == cutoffs.end())
      cutoffs.push_back(c.cutoff);
    if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    if (std::find(columns.begin(), columns.end(), std::make_pair(t, m)) == columns.end())
      columns.emplace_back(t, m);
    truth[{c.cutoff, t}] = c.truth;
    cell[{c.cutoff, t, m}] = &c;
  }
  std::ostringstream out;
  out << "cutoff";
  for (const auto& t : targets) {
    out << ',' << t << "_truth";
    for (const auto& [ct, m] : columns)
      if (ct == t) out << ',' << t << '_' << m << ',' << t << '_' << m << "_se";
  }
  out << ",replications\n";
  for (double c : cutoffs) {
    out << format_double(c);
    int reps = 0;
    for (const auto& t : targets) {
      out << ',' << format_double(truth[{c, t}]);
      for (const auto& [ct, m] : columns) {
        if (ct != t) continue;
        const CoverageCell* x = cell[{c, t, m}];
        out << ',' << format_double(x->coverage) << ',' << format_double(x->mc_se);
        reps = x->replications;
      }
    }
    out << ',' << reps << '\n';
  }
  return out.str();
}

}  // namespace rocinf
