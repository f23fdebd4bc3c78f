#include "rocinf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include "rocinf/parallel.hpp"

namespace rocinf {

PredictorLaw parse_law(const std::string& name) {
  if (name == "normal01" || name == "normal") return PredictorLaw::normal01;
  if (name == "uniform") return PredictorLaw::uniform;
  throw Error(ErrorCode::InvalidConfig, "unknown predictor law '" + name + "'");
}

std::string to_string(PredictorLaw law) {
  return law == PredictorLaw::normal01 ? "normal01" : "uniform";
}

Link parse_link(const std::string& name) {
  if (name == "logit") return Link::logit;
  if (name == "cauchit") return Link::cauchit;
  throw Error(ErrorCode::InvalidConfig, "unknown link '" + name + "'");
}

std::string to_string(Link link) { return link == Link::logit ? "logit" : "cauchit"; }

double link_value(Link link, double v) {
  return link == Link::logit ? logistic(v) : 0.5 + std::atan(v) / std::numbers::pi;
}

void DgpSpec::validate() const {
  if (beta_true.size() < 2) throw Error(ErrorCode::InvalidConfig, "beta_true needs a slope");
  if (n < 50) throw Error(ErrorCode::InvalidConfig, "simulated samples need n >= 50");
  if (noise_predictors < 0) throw Error(ErrorCode::InvalidConfig, "noise_predictors < 0");
}

namespace {

double draw_predictor(PredictorLaw law, rng::Engine& engine) {
  if (law == PredictorLaw::normal01) return std::normal_distribution<double>(0.0, 1.0)(engine);
  return std::uniform_real_distribution<double>(-0.5, 1.5)(engine);
}

double index_of(const DgpSpec& spec, const double* x) {
  double v = spec.beta_true[0];
  for (Eigen::Index j = 1; j < spec.beta_true.size(); ++j) v += spec.beta_true[j] * x[j - 1];
  return link_value(spec.link, v);
}

}  // namespace

Dataset draw_sample(const DgpSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int k = spec.predictors();
  const int informative = static_cast<int>(spec.beta_true.size()) - 1;
  rng::Engine engine = rng::stream(seed, 0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  MatrixXd x(spec.n, k);
  VectorXd y(spec.n);
  std::vector<double> row(static_cast<std::size_t>(k));
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < k; ++j) row[j] = draw_predictor(spec.law, engine);
    const double p = index_of(spec, row.data());
    y[i] = unif(engine) < p ? 1.0 : 0.0;
    for (int j = 0; j < k; ++j) x(i, j) = row[j];
  }
  std::vector<std::string> names;
  for (int j = 0; j < informative; ++j) names.push_back("x" + std::to_string(j + 1));
  for (int j = 0; j < spec.noise_predictors; ++j) names.push_back("z" + std::to_string(j + 1));
  return Dataset(std::move(y), std::move(x), std::move(names));
}

VectorXd true_index(const DgpSpec& spec, const Dataset& data) {
  const int informative = static_cast<int>(spec.beta_true.size()) - 1;
  if (data.k() < informative)
    throw Error(ErrorCode::DimensionMismatch, "sample has fewer predictors than beta_true");
  VectorXd g(data.n());
  std::vector<double> row(static_cast<std::size_t>(informative));
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < informative; ++j) row[j] = data.x()(i, j);
    g[i] = index_of(spec, row.data());
  }
  return g;
}

TrueValues true_values(const DgpSpec& spec, const std::vector<double>& cutoffs,
                       const std::vector<double>& t_grid, std::int64_t mc_n, std::uint64_t seed) {
  spec.validate();
  if (mc_n < 1000) throw Error(ErrorCode::InvalidConfig, "truth simulation needs mc_n >= 1000");
  const int informative = static_cast<int>(spec.beta_true.size()) - 1;
  rng::Engine engine = rng::stream(seed, 0);
  std::vector<double> p(static_cast<std::size_t>(mc_n));
  std::vector<double> row(static_cast<std::size_t>(informative));
  for (auto& v : p) {
    for (auto& x : row) x = draw_predictor(spec.law, engine);
    v = index_of(spec, row.data());
  }
  std::sort(p.begin(), p.end(), std::greater<>());

  // Descending order: cum1[i], cum0[i] are the class masses strictly before i.
  const std::size_t m = p.size();
  std::vector<double> cum1(m + 1, 0.0), cum0(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cum1[i + 1] = cum1[i] + p[i];
    cum0[i + 1] = cum0[i] + (1.0 - p[i]);
  }
  const double total1 = cum1[m], total0 = cum0[m];

  TrueValues out;
  out.mc_n = mc_n;
  out.pi = total1 / static_cast<double>(m);
  out.cutoffs = cutoffs;
  for (double c : cutoffs) {
    // number of draws with p > c
    const auto above = static_cast<std::size_t>(
        std::lower_bound(p.begin(), p.end(), c, [](double a, double b) { return a > b; }) -
        p.begin());
    out.tp.push_back(cum1[above] / total1);
    out.fp.push_back(cum0[above] / total0);
  }
  out.t_grid = t_grid;
  for (double t : t_grid) {
    const double target = t * total0;
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(cum0.begin(), cum0.end(), target) - cum0.begin());
    if (pos == 0) {
      out.roc.push_back(0.0);
    } else if (pos > m) {
      out.roc.push_back(1.0);
    } else {
      const double frac = (target - cum0[pos - 1]) / (cum0[pos] - cum0[pos - 1]);
      out.roc.push_back((cum1[pos - 1] + frac * (cum1[pos] - cum1[pos - 1])) / total1);
    }
  }
  // P(G1 > G0): every positive mass followed by the negative mass ranked below it.
  double auc = 0.0;
  for (std::size_t i = 0; i < m; ++i) auc += p[i] * (total0 - cum0[i + 1]);
  out.auc = auc / (total1 * total0);
  return out;
}

namespace {

bool first_stage_failure(ErrorCode code) {
  return code == ErrorCode::Separation || code == ErrorCode::NoConvergence ||
         code == ErrorCode::RankDeficient || code == ErrorCode::DegenerateOutcome ||
         code == ErrorCode::SingularAMatrix;
}

BootstrapConfig inner_boot(const BootstrapConfig& base, std::uint64_t seed, int r) {
  BootstrapConfig b = base;
  b.seed = rng::derive(seed, static_cast<std::uint64_t>(r), 1);
  b.workers = 1;
  return b;
}

}  // namespace

CoverageReport coverage_experiment(const DgpSpec& spec, const CoverageConfig& cfg) {
  spec.validate();
  if (cfg.replications < 1) throw Error(ErrorCode::InvalidConfig, "need at least one replication");
  const TrueValues truth = true_values(spec, cfg.cutoffs, {}, cfg.truth_draws,
                                       rng::derive(cfg.seed, 0xC0FFEE));

  struct Cell {
    std::size_t cutoff, target, method;
  };
  std::vector<Cell> layout;
  for (std::size_t c = 0; c < cfg.cutoffs.size(); ++c)
    for (std::size_t t = 0; t < cfg.targets.size(); ++t)
      for (std::size_t m = 0; m < cfg.methods.size(); ++m) layout.push_back({c, t, m});

  // 1 covered, 0 missed, 2 no usable interval; empty when the replication failed
  std::vector<std::vector<char>> outcome(static_cast<std::size_t>(cfg.replications));
  parallel_for(cfg.replications, cfg.workers, [&](int r) {
    const Dataset sample = draw_sample(spec, rng::derive(cfg.seed, static_cast<std::uint64_t>(r)));
    FittedModel model;
    try {
      model = fit_logit(sample);
    } catch (const Error& e) {
      if (first_stage_failure(e.code())) return;
      throw;
    }
    const IndexValues g_true(true_index(spec, sample));
    ProcedureConfig proc = cfg.procedure;
    proc.boot = inner_boot(cfg.procedure.boot, cfg.seed, r);
    std::vector<char> local;
    for (const Cell& cell : layout) {
      const double c = cfg.cutoffs[cell.cutoff];
      const LinearTarget& target = cfg.targets[cell.target];
      const CiMethod method = cfg.methods[cell.method];
      const double value = target.a * truth.tp[cell.cutoff] + target.b * truth.fp[cell.cutoff];
      try {
        const PointwiseCI ci =
            method == CiMethod::conventional_fixed_index
                ? pointwise_ci_fixed(sample, g_true, c, target, cfg.level)
                : pointwise_ci(sample, model, c, target, method, cfg.level, proc);
        local.push_back(ci.lower <= value && value <= ci.upper ? 1 : 0);
      } catch (const Error& e) {
        if (exit_status(e.code()) != 3) throw;
        local.push_back(2);
      }
    }
    outcome[static_cast<std::size_t>(r)] = std::move(local);
  });

  CoverageReport report;
  report.requested = cfg.replications;
  report.seed = cfg.seed;
  for (const auto& o : outcome) report.failures += o.empty() ? 1 : 0;
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const Cell& cell = layout[k];
    CoverageCell out;
    out.cutoff = cfg.cutoffs[cell.cutoff];
    out.target = cfg.targets[cell.target];
    out.method = cfg.methods[cell.method];
    out.truth = out.target.a * truth.tp[cell.cutoff] + out.target.b * truth.fp[cell.cutoff];
    out.nominal = cfg.level;
    for (const auto& o : outcome) {
      if (o.empty()) continue;
      ++out.replications;
      out.covered += o[k] == 1 ? 1 : 0;
      out.boundary += o[k] == 2 ? 1 : 0;
    }
    if (out.replications > 0) {
      out.coverage = static_cast<double>(out.covered) / out.replications;
      out.mc_se = std::sqrt(out.coverage * (1.0 - out.coverage) / out.replications);
    }
    report.cells.push_back(out);
  }
  return report;
}

Experiment parse_experiment(const std::string& name) {
  if (name == "band") return Experiment::band;
  if (name == "dominance") return Experiment::dominance;
  if (name == "auc" || name == "auc-compare") return Experiment::auc;
  throw Error(ErrorCode::InvalidConfig, "unknown experiment '" + name + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::band: return "band";
    case Experiment::dominance: return "dominance";
    case Experiment::auc: return "auc";
  }
  return "unknown";
}

ExperimentSummary band_and_test_experiment(const DgpSpec& spec, const ExperimentConfig& cfg) {
  spec.validate();
  if (cfg.replications < 1) throw Error(ErrorCode::InvalidConfig, "need at least one replication");
  cfg.procedure.grid.validate();
  const std::vector<double> grid = make_t_grid(cfg.procedure.grid);
  std::vector<double> truth_roc;
  if (cfg.kind == Experiment::band)
    truth_roc = true_values(spec, {}, grid, cfg.truth_draws, rng::derive(cfg.seed, 0xC0FFEE)).roc;
  const double z_crit = normal_critical(1.0 - cfg.procedure.grid.alpha);

  struct Outcome {
    bool valid = false;
    bool hit = false;
    double statistic = 0.0;
  };
  std::vector<Outcome> results(static_cast<std::size_t>(cfg.replications));
  parallel_for(cfg.replications, cfg.workers, [&](int r) {
    const Dataset sample = draw_sample(spec, rng::derive(cfg.seed, static_cast<std::uint64_t>(r)));
    ProcedureConfig proc = cfg.procedure;
    proc.boot = inner_boot(cfg.procedure.boot, cfg.seed, r);
    Outcome& out = results[static_cast<std::size_t>(r)];
    try {
      if (cfg.kind == Experiment::band) {
        const FittedSpec m = fit_spec(sample, cfg.model1);
        const BandResult band = uniform_band(m.data, m.model, proc, m.transform);
        bool covered = true;
        for (std::size_t j = 0; j < grid.size(); ++j)
          covered = covered && band.lower[j] <= truth_roc[j] && truth_roc[j] <= band.upper[j];
        out = {true, covered, band.critical_value};
      } else {
        const FittedSpec m1 = fit_spec(sample, cfg.model1);
        const FittedSpec m2 = fit_spec(sample, cfg.model2);
        if (cfg.kind == Experiment::dominance) {
          const DominanceResult d = dominance_test(m1, m2, proc);
          out = {true, d.reject, d.statistic};
        } else {
          const AucComparison a = auc_compare(m1, m2, proc);
          out = {true, !a.degenerate_warning && std::abs(a.z) > z_crit, a.z};
        }
      }
    } catch (const Error& e) {
      if (!first_stage_failure(e.code()) && exit_status(e.code()) != 3 &&
          e.code() != ErrorCode::ExcessiveFailures)
        throw;
    }
  });

  ExperimentSummary s;
  s.kind = cfg.kind;
  s.requested = cfg.replications;
  for (const Outcome& o : results) {
    if (!o.valid) {
      ++s.failures;
      continue;
    }
    ++s.valid;
    s.hits += o.hit ? 1 : 0;
    s.mean_statistic += o.statistic;
  }
  if (s.valid > 0) {
    s.rate = static_cast<double>(s.hits) / s.valid;
    s.mc_se = std::sqrt(s.rate * (1.0 - s.rate) / s.valid);
    s.mean_statistic /= s.valid;
  }
  return s;
}

}  // namespace rocinf
