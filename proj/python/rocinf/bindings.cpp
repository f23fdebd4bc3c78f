#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>

#include "rocinf/inference.hpp"
#include "rocinf/report.hpp"
#include "rocinf/simulation.hpp"

namespace py = pybind11;
using namespace rocinf;

namespace {

py::object to_python(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: {
      const auto& s = j.get_ref<const std::string&>();
      if (s == "+inf") return py::float_(std::numeric_limits<double>::infinity());
      if (s == "-inf") return py::float_(-std::numeric_limits<double>::infinity());
      if (s == "nan") return py::float_(std::numeric_limits<double>::quiet_NaN());
      return py::str(s);
    }
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_python(x));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
  }
}

ProcedureConfig make_config(double tau_l, double tau_u, double step, double epsilon, double alpha,
                            const std::string& kernel, std::optional<double> bandwidth,
                            const std::string& scheme, int replicates, std::uint64_t seed,
                            const std::string& weight_law, int workers, const std::string& mode) {
  ProcedureConfig cfg;
  cfg.grid = {tau_l, tau_u, step, epsilon, alpha};
  cfg.grid.validate();
  cfg.kernel.kernel = parse_kernel(kernel);
  cfg.kernel.bandwidth = bandwidth;
  cfg.scheme = parse_scheme(scheme);
  cfg.boot.replicates = replicates;
  cfg.boot.seed = seed;
  cfg.boot.weight_law = parse_weight_law(weight_law);
  cfg.boot.workers = workers;
  cfg.mode = parse_sup_mode(mode);
  return cfg;
}

ModelSpec model_spec(const Dataset& data, const std::vector<std::string>& names,
                     const std::string& transform) {
  ModelSpec spec;
  for (const auto& name : names) {
    const int idx = data.column_index(name);
    if (idx < 0) throw Error(ErrorCode::MissingColumn, "predictor column '" + name + "'");
    spec.columns.push_back(idx);
  }
  spec.transform = make_transform(transform);
  spec.transform_name = transform;
  return spec;
}

DgpSpec dgp(int n, const std::optional<VectorXd>& beta, const std::string& law,
            const std::string& link, int noise) {
  DgpSpec spec;
  if (beta) spec.beta_true = *beta;
  spec.n = n;
  spec.law = parse_law(law);
  spec.link = parse_link(link);
  spec.noise_predictors = noise;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ROC-curve inference with first-stage estimation correction";

  static py::exception<Error> error_type(m, "RocinfError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(error_name(e.code()));
      exc.attr("exit_status") = exit_status(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<VectorXd, MatrixXd, std::vector<std::string>>(), py::arg("y"), py::arg("x"),
           py::arg("names") = std::vector<std::string>{})
      .def_property_readonly("y", &Dataset::y)
      .def_property_readonly("x", &Dataset::x)
      .def_property_readonly("names", &Dataset::names)
      .def_property_readonly("n", &Dataset::n)
      .def_property_readonly("n1", &Dataset::n1)
      .def_property_readonly("n0", &Dataset::n0)
      .def_property_readonly("pi_hat", &Dataset::pi_hat)
      .def("__len__", &Dataset::n);

  m.def("load_csv", [](const std::string& path, const std::string& outcome) {
    return load_dataset(read_csv(path), outcome);
  }, py::arg("path"), py::arg("outcome"));

  py::class_<ProcedureConfig>(m, "ProcedureConfig")
      .def(py::init(&make_config), py::arg("tau_l") = 0.05, py::arg("tau_u") = 0.95,
           py::arg("step") = 0.01, py::arg("epsilon") = 0.01, py::arg("alpha") = 0.10,
           py::arg("kernel") = "biweight", py::arg("bandwidth") = py::none(),
           py::arg("scheme") = "multiplier", py::arg("replicates") = 1000, py::arg("seed") = 0,
           py::arg("weight_law") = "two_point", py::arg("workers") = 0,
           py::arg("mode") = "two_sided")
      .def("to_dict", [](const ProcedureConfig& c) { return to_python(to_json(c)); });

  py::class_<FittedModel>(m, "FittedModel")
      .def_readonly("beta_hat", &FittedModel::beta_hat)
      .def_readonly("psi_beta", &FittedModel::psi_beta)
      .def_readonly("v_hat", &FittedModel::v_hat)
      .def_readonly("fitted", &FittedModel::fitted)
      .def_readonly("loglik", &FittedModel::loglik)
      .def_readonly("converged", &FittedModel::converged)
      .def_readonly("iterations", &FittedModel::iterations)
      .def("to_dict", [](const FittedModel& f) { return to_python(to_json(f)); });

  m.def("select", [](const Dataset& data, const std::vector<std::string>& predictors) {
    return data.select(model_spec(data, predictors, "identity").columns);
  }, py::arg("data"), py::arg("predictors"));

  m.def("fit_logit", [](const Dataset& data) { return fit_logit(data); }, py::arg("data"));

  m.def("t_grid", [](double tau_l, double tau_u, double step) {
    GridConfig g;
    g.tau_l = tau_l;
    g.tau_u = tau_u;
    g.step = step;
    g.validate();
    return make_t_grid(g);
  }, py::arg("tau_l") = 0.05, py::arg("tau_u") = 0.95, py::arg("step") = 0.01);

  m.def("roc_curve", [](const Dataset& data, const VectorXd& index, const std::vector<double>& grid) {
    return to_python(to_json(roc_at_grid(data, IndexValues(index), grid)));
  }, py::arg("data"), py::arg("index"), py::arg("grid"));

  m.def("tp_fp", [](const Dataset& data, const VectorXd& index, double cutoff) {
    return tp_fp_at_cutoff(data, IndexValues(index), cutoff);
  }, py::arg("data"), py::arg("index"), py::arg("cutoff"));

  m.def("auc", [](const Dataset& data, const VectorXd& index) {
    return auc(data, IndexValues(index));
  }, py::arg("data"), py::arg("index"));

  m.def("pointwise_ci", [](const Dataset& data, const FittedModel& model, double cutoff,
                           const std::string& target, const std::string& method, double level,
                           const ProcedureConfig& cfg) {
    return to_python(to_json(pointwise_ci(data, model, cutoff, parse_target(target),
                                          parse_ci_method(method), level, cfg)));
  }, py::arg("data"), py::arg("model"), py::arg("cutoff"), py::arg("target") = "tp",
     py::arg("method") = "corrected_analytic", py::arg("level") = 0.9,
     py::arg("config") = ProcedureConfig{});

  m.def("uniform_band", [](const Dataset& data, const FittedModel& model, const ProcedureConfig& cfg,
                           const std::string& transform) {
    return to_python(to_json(uniform_band(data, model, cfg, make_transform(transform))));
  }, py::arg("data"), py::arg("model"), py::arg("config"), py::arg("transform") = "identity");

  m.def("dominance_test", [](const Dataset& data, const std::vector<std::string>& predictors1,
                             const std::vector<std::string>& predictors2, const ProcedureConfig& cfg,
                             const std::string& transform1, const std::string& transform2) {
    const FittedSpec m1 = fit_spec(data, model_spec(data, predictors1, transform1));
    const FittedSpec m2 = fit_spec(data, model_spec(data, predictors2, transform2));
    return to_python(to_json(dominance_test(m1, m2, cfg)));
  }, py::arg("data"), py::arg("predictors1"), py::arg("predictors2"), py::arg("config"),
     py::arg("transform1") = "identity", py::arg("transform2") = "identity");

  m.def("auc_compare", [](const Dataset& data, const std::vector<std::string>& predictors1,
                          const std::vector<std::string>& predictors2, const ProcedureConfig& cfg) {
    const FittedSpec m1 = fit_spec(data, model_spec(data, predictors1, "identity"));
    const FittedSpec m2 = fit_spec(data, model_spec(data, predictors2, "identity"));
    return to_python(to_json(auc_compare(m1, m2, cfg)));
  }, py::arg("data"), py::arg("predictors1"), py::arg("predictors2"), py::arg("config"));

  m.def("draw_sample", [](int n, std::uint64_t seed, const std::optional<VectorXd>& beta,
                          const std::string& law, const std::string& link, int noise) {
    return draw_sample(dgp(n, beta, law, link, noise), seed);
  }, py::arg("n"), py::arg("seed"), py::arg("beta") = py::none(), py::arg("law") = "normal",
     py::arg("link") = "logit", py::arg("noise") = 0);

  m.def("true_values", [](const std::vector<double>& cutoffs, const std::vector<double>& grid,
                          std::int64_t draws, std::uint64_t seed, const std::optional<VectorXd>& beta,
                          const std::string& law, const std::string& link) {
    const TrueValues tv = true_values(dgp(500, beta, law, link, 0), cutoffs, grid, draws, seed);
    py::dict out;
    out["cutoffs"] = tv.cutoffs;
    out["tp"] = tv.tp;
    out["fp"] = tv.fp;
    out["t"] = tv.t_grid;
    out["roc"] = tv.roc;
    out["auc"] = tv.auc;
    out["pi"] = tv.pi;
    return out;
  }, py::arg("cutoffs"), py::arg("grid") = std::vector<double>{}, py::arg("draws") = 1000000,
     py::arg("seed") = 0, py::arg("beta") = py::none(), py::arg("law") = "normal",
     py::arg("link") = "logit");

  m.def("coverage_experiment", [](int n, int replications, std::uint64_t seed,
                                  const std::vector<double>& cutoffs,
                                  const std::vector<std::string>& targets,
                                  const std::vector<std::string>& methods, double level,
                                  std::int64_t truth_draws, const std::string& law,
                                  const std::string& link, int workers) {
    CoverageConfig cfg;
    cfg.cutoffs = cutoffs;
    cfg.targets.clear();
    for (const auto& t : targets) cfg.targets.push_back(parse_target(t));
    cfg.methods.clear();
    for (const auto& s : methods) cfg.methods.push_back(parse_ci_method(s));
    cfg.replications = replications;
    cfg.level = level;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.truth_draws = truth_draws;
    cfg.procedure.boot.seed = seed;
    const DgpSpec spec = dgp(n, std::nullopt, law, link, 0);
    CoverageReport report;
    {
      py::gil_scoped_release release;
      report = coverage_experiment(spec, cfg);
    }
    return to_python(to_json(report));
  }, py::arg("n") = 500, py::arg("replications") = 200, py::arg("seed") = 0,
     py::arg("cutoffs") = std::vector<double>{0.5},
     py::arg("targets") = std::vector<std::string>{"tp"},
     py::arg("methods") = std::vector<std::string>{"conventional_estimated_index",
                                                   "corrected_analytic"},
     py::arg("level") = 0.9, py::arg("truth_draws") = 200000, py::arg("law") = "normal",
     py::arg("link") = "logit", py::arg("workers") = 0);
}
