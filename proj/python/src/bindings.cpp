#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "acgd/acceptance.hpp"
#include "acgd/analysis.hpp"
#include "acgd/csv.hpp"
#include "acgd/harness.hpp"

namespace py = pybind11;
using namespace acgd;

namespace {

// Trace columns as a dict of lists; numpy turns each into an array cheaply.
py::dict trace_columns(const Trace& t) {
  std::vector<std::size_t> iter, evals;
  std::vector<double> f_avg, f_last, eta, S;
  for (const auto& r : t.records) {
    iter.push_back(r.iter);
    evals.push_back(r.evals);
    f_avg.push_back(r.f_avg);
    f_last.push_back(r.f_last);
    eta.push_back(r.eta);
    S.push_back(r.S);
  }
  py::dict d;
  d["iter"] = iter;
  d["evals"] = evals;
  d["f_avg"] = f_avg;
  d["f_last"] = f_last;
  d["eta"] = eta;
  d["S"] = S;
  return d;
}

std::string trace_csv(const Trace& t) {
  std::ostringstream os;
  write_trace_csv(os, t);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AcceleGrad and AdaGrad with seeded problems, oracles and traces";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("alpha", &alpha, py::arg("t"));
  m.def("project_ball",
        [](const Vector& x, const Vector& center, double radius) {
          return project_ball(x, Ball(center, radius));
        },
        py::arg("x"), py::arg("center"), py::arg("radius"));

  py::class_<RegressionData, std::shared_ptr<RegressionData>>(m, "RegressionData")
      .def(py::init([](RowMatrix A, Vector b) {
             auto d = std::make_shared<RegressionData>();
             if (A.rows() != b.size()) throw UsageError("A and b disagree on n");
             d->A = std::move(A);
             d->b = std::move(b);
             return d;
           }),
           py::arg("A"), py::arg("b"))
      .def_readonly("A", &RegressionData::A)
      .def_readonly("b", &RegressionData::b)
      .def_readonly("x_natural", &RegressionData::x_natural)
      .def("save", [](const RegressionData& d, const std::filesystem::path& p) { save_container(p, d); })
      .def_static("load", [](const std::filesystem::path& p) {
        return std::make_shared<RegressionData>(load_container(p));
      });

  m.def("generate_regression_data",
        [](std::size_t n, std::size_t d, double sigma2, std::uint64_t seed) {
          return std::make_shared<RegressionData>(generate_regression_data(n, d, sigma2, seed));
        },
        py::arg("n"), py::arg("d"), py::arg("sigma2"), py::arg("seed"));

  py::class_<Objective, std::shared_ptr<Objective>>(m, "Objective")
      .def_property_readonly("dim", &Objective::dim)
      .def_property_readonly("name", &Objective::name)
      .def("value", &Objective::value, py::arg("x"))
      .def("value_and_subgradient",
           [](const Objective& f, const Vector& x) {
             auto vg = f.value_and_subgradient(x);
             return py::make_tuple(vg.value, vg.grad);
           },
           py::arg("x"));

  py::class_<FiniteSumObjective, Objective, std::shared_ptr<FiniteSumObjective>>(
      m, "FiniteSumObjective")
      .def_property_readonly("num_terms", &FiniteSumObjective::num_terms)
      .def("subset_value_and_subgradient",
           [](const FiniteSumObjective& f, const Vector& x, const std::vector<std::size_t>& s) {
             auto vg = f.value_and_subgradient(x, s);
             return py::make_tuple(vg.value, vg.grad);
           },
           py::arg("x"), py::arg("subset"));

  py::class_<RegressionProblem, FiniteSumObjective, std::shared_ptr<RegressionProblem>>(
      m, "RegressionProblem")
      .def(py::init<std::shared_ptr<const RegressionData>, int>(), py::arg("data"), py::arg("p"))
      .def_property_readonly("p", &RegressionProblem::p);

  py::enum_<Loss>(m, "Loss").value("LOGISTIC", Loss::Logistic).value("HINGE", Loss::Hinge);

  py::class_<ClassificationProblem, FiniteSumObjective, std::shared_ptr<ClassificationProblem>>(
      m, "ClassificationProblem")
      .def(py::init([](const std::filesystem::path& path, Loss loss, double reg) {
             auto ds = std::make_shared<const Dataset>(load_libsvm(path));
             return std::make_shared<ClassificationProblem>(ds, loss, reg);
           }),
           py::arg("libsvm_path"), py::arg("loss"), py::arg("regularization") = 0.0);

  py::class_<ReferenceOptimum>(m, "ReferenceOptimum")
      .def_readonly("f_star", &ReferenceOptimum::f_star)
      .def_readonly("x_star", &ReferenceOptimum::x_star)
      .def_readonly("exact", &ReferenceOptimum::exact)
      .def_readonly("method", &ReferenceOptimum::method);
  m.def("reference_optimum", &reference_optimum, py::arg("problem"), py::arg("budget") = 20000);

  m.def(
      "run",
      [](std::shared_ptr<const Objective> problem, const std::string& method, double diameter,
         std::size_t T, double lipschitz, bool project_y, bool skip_projection,
         const std::string& oracle, std::size_t batch, double noise_sigma, std::uint64_t seed,
         std::size_t every, std::optional<Vector> x0) {
        OptimizerConfig cfg;
        cfg.method = parse_method(method);
        cfg.diameter = diameter;
        cfg.lipschitz = lipschitz;
        cfg.project_y = project_y;
        cfg.skip_projection = skip_projection;
        OracleSpec spec{oracle, batch, noise_sigma};
        const Vector start =
            x0 ? *x0 : Vector::Zero(static_cast<Eigen::Index>(problem->dim()));
        Oracle o = build_oracle(spec, std::move(problem), seed);
        RecordCadence cadence;
        cadence.every = every;
        RunResult res;
        {
          py::gil_scoped_release release;
          res = acgd::run(cfg, o, start, T, cadence);
        }
        py::dict out = trace_columns(res.trace);
        out["output"] = res.output;
        out["last"] = res.last;
        out["csv"] = trace_csv(res.trace);
        return out;
      },
      py::arg("problem"), py::arg("method") = "accelegrad", py::arg("diameter"),
      py::arg("T"), py::arg("lipschitz") = 0.0, py::arg("project_y") = false,
      py::arg("skip_projection") = false, py::arg("oracle") = "exact", py::arg("batch") = 1,
      py::arg("noise_sigma") = 0.0, py::arg("seed") = 0, py::arg("every") = 0,
      py::arg("x0") = py::none());

  m.def("record_points",
        [](std::size_t T, std::size_t every) { return record_points(T, {every, 200}); },
        py::arg("T"), py::arg("every") = 0);

  m.def("fit_rate_slope",
        [](const std::vector<double>& t, const std::vector<double>& err, double t_min,
           double t_max) {
          const auto f = fit_rate_slope(t, err, t_min, t_max);
          py::dict d;
          d["slope"] = f.slope;
          d["intercept"] = f.intercept;
          d["r2"] = f.r2;
          d["points"] = f.points;
          return d;
        },
        py::arg("t"), py::arg("err"), py::arg("t_min"), py::arg("t_max"));

  m.def("check_weight_properties",
        [](std::size_t t_max, std::optional<std::function<double(std::size_t)>> weight) {
          return check_weight_properties(t_max, weight ? *weight : alpha);
        },
        py::arg("t_max"), py::arg("weight") = py::none());

  m.def("verify",
        [](std::vector<std::string> only) {
          AcceptanceOptions o;
          o.only = std::move(only);
          std::vector<CriterionResult> results;
          {
            py::gil_scoped_release release;
            results = run_acceptance(o);
          }
          py::list out;
          for (const auto& r : results) {
            py::dict d;
            d["id"] = r.id;
            d["group"] = r.group;
            d["title"] = r.title;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            d["seconds"] = r.seconds;
            out.append(d);
          }
          return out;
        },
        py::arg("only") = std::vector<std::string>{});
}
