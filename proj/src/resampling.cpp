#include "rocinf/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rocinf/parallel.hpp"

namespace rocinf {

Scheme parse_scheme(const std::string& name) {
  if (name == "weighted") return Scheme::weighted;
  if (name == "multiplier") return Scheme::multiplier;
  throw Error(ErrorCode::InvalidConfig, "unknown scheme '" + name + "'");
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::weighted ? "weighted" : "multiplier";
}

SupMode parse_sup_mode(const std::string& name) {
  if (name == "one_sided" || name == "one-sided" || name == "one") return SupMode::one_sided;
  if (name == "two_sided" || name == "two-sided" || name == "two") return SupMode::two_sided;
  throw Error(ErrorCode::InvalidConfig, "unknown band mode '" + name + "'");
}

std::string to_string(SupMode mode) {
  return mode == SupMode::one_sided ? "one_sided" : "two_sided";
}

std::vector<double> BootstrapDraws::column_variance() const {
  std::vector<double> out;
  const double rows = static_cast<double>(draws.rows());
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    const double mean = draws.col(j).mean();
    out.push_back((draws.col(j).array() - mean).square().sum() / rows);
  }
  return out;
}

namespace {

void validate(const BootstrapConfig& cfg) {
  if (cfg.replicates < 1) throw Error(ErrorCode::InvalidConfig, "need at least one replicate");
}

bool centering_violated(const MatrixXd& draws) {
  const double b = static_cast<double>(draws.rows());
  for (Eigen::Index j = 0; j < draws.cols(); ++j) {
    const double mean = draws.col(j).mean();
    const double sd = std::sqrt((draws.col(j).array() - mean).square().sum() / b);
    if (std::abs(mean) > 3.0 * sd / std::sqrt(b) + 1e-12) return true;
  }
  return false;
}

bool recoverable(ErrorCode code) {
  return code == ErrorCode::Separation || code == ErrorCode::NoConvergence ||
         code == ErrorCode::AllZeroClassWeight || code == ErrorCode::RankDeficient;
}

VectorXd transformed(const VectorXd& p, const MonotoneMap& transform) {
  if (!transform) return p;
  return p.unaryExpr([&](double v) { return transform(v); });
}

}  // namespace

std::vector<BootstrapDraws> weighted_bootstrap_joint(const std::vector<RefitModel>& models,
                                                     const std::vector<double>& grid,
                                                     const BootstrapConfig& cfg) {
  validate(cfg);
  if (cfg.weight_law == WeightLaw::gaussian)
    throw Error(ErrorCode::InvalidConfig, "weighted refits need a nonnegative weight law");
  if (models.empty()) throw Error(ErrorCode::InvalidConfig, "no models to bootstrap");
  const int n = models.front().data->n();
  for (const auto& m : models)
    if (m.data->n() != n || m.r_hat.size() != grid.size())
      throw Error(ErrorCode::DimensionMismatch, "bootstrap models are misaligned");
  const int b_count = cfg.replicates;
  const auto m_count = models.size();
  const double root_n = std::sqrt(static_cast<double>(n));

  // rows[model][replicate] -> optional draw
  std::vector<std::vector<std::vector<double>>> rows(m_count,
                                                     std::vector<std::vector<double>>(b_count));
  std::vector<char> ok(static_cast<std::size_t>(b_count), 0);
  std::vector<int> redraws(static_cast<std::size_t>(b_count), 0);

  parallel_for(b_count, cfg.workers, [&](int r) {
    for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      auto engine = rng::stream(cfg.seed, static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(attempt));
      const WeightVector w = draw_weights(n, cfg.weight_law, engine);
      try {
        std::vector<std::vector<double>> local;
        for (const auto& m : models) {
          LogitOptions opt;
          opt.start = m.fit->beta_hat;
          opt.with_influence = false;
          const FittedModel refit = fit_logit_weighted(*m.data, w, opt);
          const VectorXd g = transformed(refit.fitted, m.transform);
          auto rw = weighted_roc(*m.data, std::span<const double>(g.data(), g.size()),
                                 std::span<const double>(w.w.data(), w.w.size()), grid);
          for (std::size_t j = 0; j < rw.size(); ++j) rw[j] = root_n * (rw[j] - m.r_hat[j]);
          local.push_back(std::move(rw));
        }
        for (std::size_t k = 0; k < m_count; ++k) rows[k][r] = std::move(local[k]);
        ok[r] = 1;
        return;
      } catch (const Error& e) {
        if (!recoverable(e.code())) throw;
        ++redraws[r];
      }
    }
  });

  int failures = 0, total_redraws = 0;
  for (int r = 0; r < b_count; ++r) {
    failures += ok[r] ? 0 : 1;
    total_redraws += ok[r] ? redraws[r] : redraws[r] - 1;
  }
  if (failures > cfg.max_failure_rate * b_count)
    throw Error(ErrorCode::ExcessiveFailures, std::to_string(failures) + " of " +
                                                  std::to_string(b_count) +
                                                  " weighted replicates failed to refit");

  std::vector<BootstrapDraws> out(m_count);
  const auto kept = static_cast<Eigen::Index>(b_count - failures);
  for (std::size_t k = 0; k < m_count; ++k) {
    auto& d = out[k];
    d.scheme = Scheme::weighted;
    d.t_grid = grid;
    d.replicates = b_count;
    d.seed = cfg.seed;
    d.failures = failures;
    d.redraws = total_redraws;
    d.draws.resize(kept, static_cast<Eigen::Index>(grid.size()));
    Eigen::Index row = 0;
    for (int r = 0; r < b_count; ++r) {
      if (!ok[r]) continue;
      for (std::size_t j = 0; j < grid.size(); ++j)
        d.draws(row, static_cast<Eigen::Index>(j)) = rows[k][r][j];
      ++row;
    }
    d.centering_flag = centering_violated(d.draws);
  }
  return out;
}

BootstrapDraws weighted_bootstrap(const Dataset& data, const FittedModel& model,
                                  const std::vector<double>& grid, const BootstrapConfig& cfg,
                                  const MonotoneMap& transform) {
  const VectorXd g = transformed(model.fitted, transform);
  RefitModel m{&data, &model, transform, roc_at_grid(data, IndexValues(g), grid).r_values};
  return std::move(weighted_bootstrap_joint({m}, grid, cfg).front());
}

BootstrapDraws multiplier_bootstrap(const MatrixXd& psi, const std::vector<double>& grid,
                                    const BootstrapConfig& cfg) {
  validate(cfg);
  if (psi.cols() != static_cast<Eigen::Index>(grid.size()))
    throw Error(ErrorCode::DimensionMismatch, "influence columns differ from grid");
  const auto n = psi.rows();
  MatrixXd u(cfg.replicates, n);
  parallel_for(cfg.replicates, cfg.workers, [&](int b) {
    auto engine = rng::stream(cfg.seed, static_cast<std::uint64_t>(b));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) u(b, i) = normal(engine);
  });
  BootstrapDraws d;
  d.scheme = Scheme::multiplier;
  d.t_grid = grid;
  d.replicates = cfg.replicates;
  d.seed = cfg.seed;
  d.draws = u * psi / std::sqrt(static_cast<double>(n));
  d.centering_flag = centering_violated(d.draws);
  return d;
}

namespace {

Eigen::Matrix2d covariance_of(const std::vector<Eigen::Vector2d>& points, int n) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : points) cov += (p - mean) * (p - mean).transpose();
  return cov * (static_cast<double>(n) / static_cast<double>(points.size()));
}

template <class Replicate>
Eigen::Matrix2d pointwise_bootstrap(int n, const BootstrapConfig& cfg, Replicate&& replicate) {
  validate(cfg);
  std::vector<std::optional<Eigen::Vector2d>> slots(static_cast<std::size_t>(cfg.replicates));
  parallel_for(cfg.replicates, cfg.workers, [&](int r) {
    for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      auto engine = rng::stream(cfg.seed, static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(attempt));
      const WeightVector w = draw_weights(n, cfg.weight_law, engine);
      try {
        slots[r] = replicate(w);
        return;
      } catch (const Error& e) {
        if (!recoverable(e.code())) throw;
      }
    }
  });
  std::vector<Eigen::Vector2d> points;
  for (const auto& s : slots)
    if (s) points.push_back(*s);
  const int failures = cfg.replicates - static_cast<int>(points.size());
  if (failures > cfg.max_failure_rate * cfg.replicates || points.size() < 2)
    throw Error(ErrorCode::ExcessiveFailures,
                std::to_string(failures) + " weighted replicates failed");
  return covariance_of(points, n);
}

}  // namespace

Eigen::Matrix2d pointwise_bootstrap_cov(const Dataset& data, const FittedModel& model, double c,
                                        const BootstrapConfig& cfg) {
  if (cfg.weight_law == WeightLaw::gaussian)
    throw Error(ErrorCode::InvalidConfig, "weighted refits need a nonnegative weight law");
  return pointwise_bootstrap(data.n(), cfg, [&](const WeightVector& w) {
    LogitOptions opt;
    opt.start = model.beta_hat;
    opt.with_influence = false;
    const FittedModel refit = fit_logit_weighted(data, w, opt);
    RocEvaluator ev(data, std::span<const double>(refit.fitted.data(), refit.fitted.size()),
                    std::span<const double>(w.w.data(), w.w.size()));
    return Eigen::Vector2d(ev.tp(c), ev.fp(c));
  });
}

Eigen::Matrix2d pointwise_bootstrap_cov_fixed(const Dataset& data, const IndexValues& g, double c,
                                              const BootstrapConfig& cfg) {
  if (cfg.weight_law == WeightLaw::gaussian)
    throw Error(ErrorCode::InvalidConfig, "weighted replicates need a nonnegative weight law");
  return pointwise_bootstrap(data.n(), cfg, [&](const WeightVector& w) {
    RocEvaluator ev(data, std::span<const double>(g.g.data(), g.g.size()),
                    std::span<const double>(w.w.data(), w.w.size()));
    return Eigen::Vector2d(ev.tp(c), ev.fp(c));
  });
}

SupStatistics sup_statistics(const MatrixXd& draws, const std::vector<double>& scale, SupMode mode) {
  if (draws.cols() != static_cast<Eigen::Index>(scale.size()))
    throw Error(ErrorCode::DimensionMismatch, "scale length differs from grid");
  for (double s : scale)
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidConfig, "scale must be strictly positive");
  SupStatistics out;
  out.sups.reserve(static_cast<std::size_t>(draws.rows()));
  for (Eigen::Index b = 0; b < draws.rows(); ++b) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < draws.cols(); ++j) {
      double v = draws(b, j) / scale[static_cast<std::size_t>(j)];
      if (mode == SupMode::two_sided) v = std::abs(v);
      best = std::max(best, v);
    }
    out.sups.push_back(best);
  }
  out.sorted = out.sups;
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

double SupStatistics::critical_value(double alpha) const {
  if (sorted.empty()) throw Error(ErrorCode::InvalidConfig, "no draws");
  const auto b = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::floor((1.0 - alpha) * b + 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace rocinf
