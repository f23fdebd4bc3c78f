#include "rocinf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rocinf/report.hpp"

namespace rocinf {
namespace {

json defaults() {
  const GridConfig grid;
  const KernelConfig kernel;
  return {{"input", nullptr},
          {"outcome", "y"},
          {"predictors", json::array()},
          {"predictors2", json::array()},
          {"index", nullptr},
          {"transform", "identity"},
          {"transform2", "identity"},
          {"grid", to_json(grid)},
          {"kernel", to_json(kernel)},
          {"scheme", "multiplier"},
          {"weight_law", "two_point"},
          {"boot", 1000},
          {"reps", 2000},
          {"seed", nullptr},
          {"workers", 0},
          {"cutoff", 0.5},
          {"target", "tp"},
          {"method", "corrected_analytic"},
          {"level", nullptr},
          {"mode", "two_sided"},
          {"format", "json"},
          {"out", nullptr},
          {"experiment", "coverage"},
          {"cutoffs", {0.2, 0.33, 0.5, 0.67, 0.8}},
          {"truth_draws", 1000000},
          {"dgp", to_json(DgpSpec{})}};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidConfig, "cannot read " + what + " from '" + s + "'");
}

json parse_grid(const std::string& text, json grid) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw Error(ErrorCode::InvalidConfig, "--grid expects tau_l:tau_u[:step]");
  grid["tau_l"] = to_number(parts[0], "tau_l");
  grid["tau_u"] = to_number(parts[1], "tau_u");
  if (parts.size() == 3) grid["step"] = to_number(parts[2], "step");
  return grid;
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
  try {
    json cfg = json::parse(in);
    if (cfg.contains("config")) cfg = cfg["config"];  // accept a previous output document
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
}

// Like merge_patch, but an explicit null in `patch` is kept as a value.
void overlay_json(json& base, const json& patch) {
  for (const auto& [key, value] : patch.items()) {
    if (value.is_object() && base.contains(key) && base[key].is_object())
      overlay_json(base[key], value);
    else
      base[key] = value;
  }
}

template <class T>
T get(const json& cfg, const char* key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad or missing setting '") + key + "'");
  }
}

GridConfig grid_from(const json& j) {
  GridConfig g;
  g.tau_l = get<double>(j, "tau_l");
  g.tau_u = get<double>(j, "tau_u");
  g.step = get<double>(j, "step");
  g.epsilon = get<double>(j, "epsilon");
  g.alpha = get<double>(j, "alpha");
  g.validate();
  return g;
}

KernelConfig kernel_from(const json& j) {
  KernelConfig k;
  k.kernel = parse_kernel(get<std::string>(j, "kernel"));
  k.gradient_form = parse_gradient_form(get<std::string>(j, "gradient_form"));
  if (j.contains("bandwidth") && !j["bandwidth"].is_null()) k.bandwidth = get<double>(j, "bandwidth");
  if (j.contains("delta") && !j["delta"].is_null()) k.delta = get<double>(j, "delta");
  if (j.contains("bandwidth_scale") && !j["bandwidth_scale"].is_null())
    k.bandwidth_scale = get<double>(j, "bandwidth_scale");
  return k;
}

DgpSpec dgp_from(const json& j) {
  DgpSpec d;
  const auto beta = get<std::vector<double>>(j, "beta_true");
  d.beta_true = Eigen::Map<const VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
  d.law = parse_law(get<std::string>(j, "law"));
  d.link = parse_link(get<std::string>(j, "link"));
  d.n = get<int>(j, "n");
  d.noise_predictors = get<int>(j, "noise_predictors");
  d.validate();
  return d;
}

bool needs_seed(const std::string& sub, const json& cfg) {
  if (sub == "band" || sub == "dominance" || sub == "auc-compare" || sub == "simulate") return true;
  return sub == "ci" && cfg["method"] == "corrected_bootstrap";
}

ProcedureConfig procedure_from(const json& cfg) {
  ProcedureConfig p;
  p.grid = grid_from(cfg["grid"]);
  p.kernel = kernel_from(cfg["kernel"]);
  p.scheme = parse_scheme(get<std::string>(cfg, "scheme"));
  p.mode = parse_sup_mode(get<std::string>(cfg, "mode"));
  p.boot.replicates = get<int>(cfg, "boot");
  p.boot.weight_law = parse_weight_law(get<std::string>(cfg, "weight_law"));
  p.boot.workers = get<int>(cfg, "workers");
  if (!cfg["seed"].is_null()) p.boot.seed = get<std::uint64_t>(cfg, "seed");
  return p;
}

struct Input {
  Table table;
  Dataset data;
};

Input load_input(const json& cfg) {
  if (cfg["input"].is_null()) throw Error(ErrorCode::InvalidConfig, "--input is required");
  Table table = read_csv(get<std::string>(cfg, "input"));
  Dataset data = load_dataset(table, get<std::string>(cfg, "outcome"));
  return {std::move(table), std::move(data)};
}

ModelSpec model_from(const Dataset& data, const json& names, const std::string& transform) {
  ModelSpec spec;
  for (const auto& name : names) {
    const int idx = data.column_index(name.get<std::string>());
    if (idx < 0)
      throw Error(ErrorCode::MissingColumn, "predictor column '" + name.get<std::string>() + "'");
    spec.columns.push_back(idx);
  }
  spec.transform = make_transform(transform);
  spec.transform_name = transform;
  return spec;
}

IndexValues fixed_index(const Dataset& data, const json& cfg) {
  const std::string name = get<std::string>(cfg, "index");
  const int idx = data.column_index(name);
  if (idx < 0) throw Error(ErrorCode::MissingColumn, "index column '" + name + "'");
  const MonotoneMap f = make_transform(get<std::string>(cfg, "transform"));
  VectorXd g = data.x().col(idx).unaryExpr([&](double v) { return f(v); });
  return IndexValues(std::move(g));
}

VectorXd transformed(const FittedSpec& m) {
  return m.model.fitted.unaryExpr([&](double v) { return m.transform(v); });
}

struct Output {
  json doc;
  std::string csv;  // used when format = csv
};

Output cmd_roc(const json& cfg) {
  const Input in = load_input(cfg);
  const GridConfig grid = grid_from(cfg["grid"]);
  const auto t = make_t_grid(grid);
  Output out;
  if (!cfg["index"].is_null()) {
    const RocCurve roc = roc_at_grid(in.data, fixed_index(in.data, cfg), t);
    out.doc = {{"roc", to_json(roc)}};
    out.csv = roc_csv(roc);
    return out;
  }
  const FittedSpec m = fit_spec(in.data, model_from(in.data, cfg["predictors"], cfg["transform"]));
  const RocCurve roc = roc_at_grid(m.data, IndexValues(transformed(m)), t);
  out.doc = {{"model", to_json(m.model)}, {"roc", to_json(roc)}};
  out.csv = roc_csv(roc);
  return out;
}

Output cmd_ci(const json& cfg) {
  const Input in = load_input(cfg);
  const ProcedureConfig proc = procedure_from(cfg);
  const double level = cfg["level"].is_null() ? 1.0 - proc.grid.alpha : get<double>(cfg, "level");
  const double c = get<double>(cfg, "cutoff");
  const LinearTarget target = parse_target(get<std::string>(cfg, "target"));
  Output out;
  PointwiseCI ci;
  if (!cfg["index"].is_null()) {
    ci = pointwise_ci_fixed(in.data, fixed_index(in.data, cfg), c, target, level);
  } else {
    const FittedSpec m = fit_spec(in.data, model_from(in.data, cfg["predictors"], "identity"));
    ci = pointwise_ci(m.data, m.model, c, target, parse_ci_method(cfg["method"]), level, proc);
    out.doc["model"] = to_json(m.model);
  }
  out.doc["ci"] = to_json(ci);
  std::ostringstream csv;
  csv << "cutoff,target,method,estimate,se,lower,upper\n"
      << format_double(ci.cutoff) << ',' << to_string(ci.target) << ',' << to_string(ci.method)
      << ',' << format_double(ci.estimate) << ',' << format_double(ci.se) << ','
      << format_double(ci.lower) << ',' << format_double(ci.upper) << '\n';
  out.csv = csv.str();
  return out;
}

Output cmd_band(const json& cfg) {
  const Input in = load_input(cfg);
  const ProcedureConfig proc = procedure_from(cfg);
  const FittedSpec m = fit_spec(in.data, model_from(in.data, cfg["predictors"], cfg["transform"]));
  const BandResult band = uniform_band(m.data, m.model, proc, m.transform);
  return {{{"model", to_json(m.model)}, {"band", to_json(band)}}, band_csv(band)};
}

std::pair<FittedSpec, FittedSpec> two_models(const Dataset& data, const json& cfg) {
  return {fit_spec(data, model_from(data, cfg["predictors"], cfg["transform"])),
          fit_spec(data, model_from(data, cfg["predictors2"], cfg["transform2"]))};
}

Output cmd_dominance(const json& cfg) {
  const Input in = load_input(cfg);
  const ProcedureConfig proc = procedure_from(cfg);
  const auto [m1, m2] = two_models(in.data, cfg);
  const DominanceResult r = dominance_test(m1, m2, proc);
  std::ostringstream csv;
  csv << "t,r_hat1,r_hat2,sigma_rd\n";
  for (std::size_t j = 0; j < r.t_grid.size(); ++j)
    csv << format_double(r.t_grid[j]) << ',' << format_double(r.r_hat1[j]) << ','
        << format_double(r.r_hat2[j]) << ',' << format_double(r.sigma_rd[j]) << '\n';
  return {{{"model1", to_json(m1.model)}, {"model2", to_json(m2.model)},
           {"dominance", to_json(r)}},
          csv.str()};
}

Output cmd_auc_compare(const json& cfg) {
  const Input in = load_input(cfg);
  const ProcedureConfig proc = procedure_from(cfg);
  const auto [m1, m2] = two_models(in.data, cfg);
  const AucComparison r = auc_compare(m1, m2, proc);
  std::ostringstream csv;
  csv << "auc1,auc2,diff,se_diff,z,p_value,v_hat_a,degenerate_warning\n"
      << format_double(r.auc1) << ',' << format_double(r.auc2) << ',' << format_double(r.diff)
      << ',' << format_double(r.se_diff) << ',' << format_double(r.z) << ','
      << format_double(r.p_value) << ',' << format_double(r.v_hat_a) << ','
      << (r.degenerate_warning ? "true" : "false") << '\n';
  return {{{"model1", to_json(m1.model)}, {"model2", to_json(m2.model)},
           {"auc_compare", to_json(r)}},
          csv.str()};
}

ModelSpec sim_model(const DgpSpec& spec, const json& names, const std::string& transform) {
  // Column names follow draw_sample: x1..xk then z1..zq.
  const Dataset probe = draw_sample(spec, 0);
  return model_from(probe, names, transform);
}

Output cmd_simulate(const json& cfg) {
  const DgpSpec spec = dgp_from(cfg["dgp"]);
  const ProcedureConfig proc = procedure_from(cfg);
  const std::string experiment = get<std::string>(cfg, "experiment");
  const auto seed = get<std::uint64_t>(cfg, "seed");
  if (experiment == "coverage") {
    CoverageConfig cc;
    cc.cutoffs = get<std::vector<double>>(cfg, "cutoffs");
    cc.replications = get<int>(cfg, "reps");
    cc.level = cfg["level"].is_null() ? 1.0 - proc.grid.alpha : get<double>(cfg, "level");
    cc.seed = seed;
    cc.workers = get<int>(cfg, "workers");
    cc.truth_draws = get<std::int64_t>(cfg, "truth_draws");
    cc.procedure = proc;
    if (cfg.contains("methods")) {
      cc.methods.clear();
      for (const auto& m : cfg["methods"]) cc.methods.push_back(parse_ci_method(m));
    }
    if (cfg.contains("targets")) {
      cc.targets.clear();
      for (const auto& t : cfg["targets"]) cc.targets.push_back(parse_target(t));
    }
    const CoverageReport report = coverage_experiment(spec, cc);
    return {{{"coverage", to_json(report)}}, coverage_csv(report)};
  }
  ExperimentConfig ec;
  ec.kind = parse_experiment(experiment);
  ec.model1 = sim_model(spec, cfg["predictors"], cfg["transform"]);
  ec.model2 = sim_model(spec, cfg["predictors2"], cfg["transform2"]);
  ec.replications = get<int>(cfg, "reps");
  ec.seed = seed;
  ec.workers = get<int>(cfg, "workers");
  ec.truth_draws = get<std::int64_t>(cfg, "truth_draws");
  ec.procedure = proc;
  const ExperimentSummary s = band_and_test_experiment(spec, ec);
  std::ostringstream csv;
  csv << "experiment,requested,valid,failures,hits,rate,mc_se\n"
      << to_string(s.kind) << ',' << s.requested << ',' << s.valid << ',' << s.failures << ','
      << s.hits << ',' << format_double(s.rate) << ',' << format_double(s.mc_se) << '\n';
  return {{{"summary", to_json(s)}}, csv.str()};
}

void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ROC curve inference with first-stage estimated indices"};
  app.require_subcommand(1, 1);

  std::string input, outcome, predictors, predictors2, grid, scheme, out_path, format, config;
  std::string index, target, method, mode, transform, transform2, weight_law, experiment, law,
      link, cutoffs, methods, beta;
  double alpha = 0, epsilon = 0, cutoff = 0, level = 0;
  int boot = 0, reps = 0, workers = 0, n = 0, noise = 0;
  std::int64_t truth_draws = 0;
  std::uint64_t seed = 0;

  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> overlay;
  auto shared = [&](CLI::App* sub) {
    auto add = [&](CLI::Option* opt, std::function<void(json&)> apply) {
      overlay.emplace_back(opt, std::move(apply));
    };
    add(sub->add_option("--config", config, "JSON config (flags override it)"), [](json&) {});
    add(sub->add_option("--input", input, "CSV file with a header row"),
        [&](json& c) { c["input"] = input; });
    add(sub->add_option("--outcome", outcome, "binary outcome column"),
        [&](json& c) { c["outcome"] = outcome; });
    add(sub->add_option("--predictors", predictors, "comma-separated predictor columns"),
        [&](json& c) { c["predictors"] = split(predictors, ','); });
    add(sub->add_option("--predictors2", predictors2, "second model's predictors"),
        [&](json& c) { c["predictors2"] = split(predictors2, ','); });
    add(sub->add_option("--index", index, "use this column as a fixed index"),
        [&](json& c) { c["index"] = index; });
    add(sub->add_option("--transform", transform, "identity|exp|cube applied to the index"),
        [&](json& c) { c["transform"] = transform; });
    add(sub->add_option("--transform2", transform2, "transform for the second model"),
        [&](json& c) { c["transform2"] = transform2; });
    add(sub->add_option("--grid", grid, "tau_l:tau_u[:step]"),
        [&](json& c) { c["grid"] = parse_grid(grid, c["grid"]); });
    add(sub->add_option("--alpha", alpha), [&](json& c) { c["grid"]["alpha"] = alpha; });
    add(sub->add_option("--epsilon", epsilon), [&](json& c) { c["grid"]["epsilon"] = epsilon; });
    add(sub->add_option("--scheme", scheme, "weighted|multiplier"),
        [&](json& c) { c["scheme"] = scheme; });
    add(sub->add_option("--weight-law", weight_law, "two_point|gaussian"),
        [&](json& c) { c["weight_law"] = weight_law; });
    add(sub->add_option("--boot", boot, "bootstrap replicates B"),
        [&](json& c) { c["boot"] = boot; });
    add(sub->add_option("--reps", reps, "Monte Carlo replications R"),
        [&](json& c) { c["reps"] = reps; });
    add(sub->add_option("--seed", seed), [&](json& c) { c["seed"] = seed; });
    add(sub->add_option("--workers", workers, "worker threads, 0 = all cores"),
        [&](json& c) { c["workers"] = workers; });
    add(sub->add_option("--cutoff", cutoff), [&](json& c) { c["cutoff"] = cutoff; });
    add(sub->add_option("--target", target, "tp|fp|tp-fp|linear:a,b"),
        [&](json& c) { c["target"] = target; });
    add(sub->add_option("--method", method, "CI method"), [&](json& c) { c["method"] = method; });
    add(sub->add_option("--level", level), [&](json& c) { c["level"] = level; });
    add(sub->add_option("--mode", mode, "one_sided|two_sided"),
        [&](json& c) { c["mode"] = mode; });
    add(sub->add_option("--out", out_path, "output path, stdout if absent"),
        [&](json& c) { c["out"] = out_path; });
    add(sub->add_option("--format", format, "json|csv"), [&](json& c) { c["format"] = format; });
  };

  auto* roc = app.add_subcommand("roc", "empirical ROC curve");
  auto* ci = app.add_subcommand("ci", "pointwise confidence interval at a cutoff");
  auto* band = app.add_subcommand("band", "uniform confidence band");
  auto* dom = app.add_subcommand("dominance", "test whether model 2 improves on model 1");
  auto* aucc = app.add_subcommand("auc-compare", "compare the AUCs of two models");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
  for (auto* sub : {roc, ci, band, dom, aucc, sim}) shared(sub);
  auto sim_flag = [&](CLI::Option* opt, std::function<void(json&)> apply) {
    overlay.emplace_back(opt, std::move(apply));
  };
  sim_flag(sim->add_option("--experiment", experiment, "coverage|band|dominance|auc"),
           [&](json& c) { c["experiment"] = experiment; });
  sim_flag(sim->add_option("--n", n), [&](json& c) { c["dgp"]["n"] = n; });
  sim_flag(sim->add_option("--law", law, "normal01|uniform"),
           [&](json& c) { c["dgp"]["law"] = law; });
  sim_flag(sim->add_option("--link", link, "logit|cauchit"),
           [&](json& c) { c["dgp"]["link"] = link; });
  sim_flag(sim->add_option("--noise", noise, "number of pure-noise predictors"),
           [&](json& c) { c["dgp"]["noise_predictors"] = noise; });
  sim_flag(sim->add_option("--cutoffs", cutoffs, "comma-separated cutoffs"), [&](json& c) {
    json list = json::array();
    for (const auto& s : split(cutoffs, ',')) list.push_back(to_number(s, "cutoff"));
    c["cutoffs"] = list;
  });
  sim_flag(sim->add_option("--beta", beta, "comma-separated true coefficients, intercept first"),
           [&](json& c) {
             json list = json::array();
             for (const auto& s : split(beta, ',')) list.push_back(to_number(s, "beta"));
             c["dgp"]["beta_true"] = list;
           });
  sim_flag(sim->add_option("--methods", methods, "comma-separated CI methods"),
           [&](json& c) { c["methods"] = split(methods, ','); });
  sim_flag(sim->add_option("--truth-draws", truth_draws),
           [&](json& c) { c["truth_draws"] = truth_draws; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(err, "InvalidConfig", e.what());
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string sub = active->get_name();
  try {
    json cfg = defaults();
    for (auto& [opt, apply] : overlay)
      if (opt->get_name() == "--config" && opt->count() > 0)
        overlay_json(cfg, read_config(config));
    for (auto& [opt, apply] : overlay)
      if (opt->count() > 0) apply(cfg);
    cfg["subcommand"] = sub;
    if (needs_seed(sub, cfg) && cfg["seed"].is_null())
      throw Error(ErrorCode::InvalidConfig, "--seed is required for " + sub);
    const std::string fmt = get<std::string>(cfg, "format");
    if (fmt != "json" && fmt != "csv")
      throw Error(ErrorCode::InvalidConfig, "--format must be json or csv");

    Output result;
    if (sub == "roc") result = cmd_roc(cfg);
    else if (sub == "ci") result = cmd_ci(cfg);
    else if (sub == "band") result = cmd_band(cfg);
    else if (sub == "dominance") result = cmd_dominance(cfg);
    else if (sub == "auc-compare") result = cmd_auc_compare(cfg);
    else result = cmd_simulate(cfg);

    json doc = {{"procedure", sub}, {"config", cfg}};
    doc.update(result.doc);
    const std::string text = fmt == "json" ? doc.dump(2) + "\n" : result.csv;
    if (cfg["out"].is_null()) {
      out << text;
    } else {
      std::ofstream file(cfg["out"].get<std::string>(), std::ios::binary);
      if (!file) throw Error(ErrorCode::IoError, "cannot write '" + cfg["out"].get<std::string>() + "'");
      file << text;
    }
    return 0;
  } catch (const Error& e) {
    emit_error(err, std::string(error_name(e.code())), e.what());
    return exit_status(e.code());
  } catch (const json::exception& e) {
    emit_error(err, "InvalidConfig", e.what());
    return 2;
  }
}

}  // namespace rocinf
