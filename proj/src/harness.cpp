#include "acgd/harness.hpp"

#include <cmath>

namespace acgd {

void RunConfig::validate() const {
  if (diameter.has_value() == rho.has_value()) {
    throw UsageError("exactly one of D and rho must be given");
  }
  if (diameter && !(*diameter > 0.0)) throw UsageError("D must be positive");
  if (rho && !(*rho > 0.0)) throw UsageError("rho must be positive");
  if (T < 1) throw UsageError("T must be >= 1");
  if (!(lipschitz >= 0.0)) throw UsageError("G must be >= 0");
  if (project_y && skip_projection) {
    throw UsageError("project_y and skip_projection are mutually exclusive");
  }
  if (project_y && method != Method::AcceleGrad) {
    throw UsageError("project_y applies to AcceleGrad only");
  }
  if (oracle.kind == "minibatch") {
    if (oracle.batch < 1) throw UsageError("minibatch size must be >= 1");
  } else if (oracle.kind == "noise") {
    if (!(oracle.noise_sigma >= 0.0)) throw UsageError("noise sigma must be >= 0");
  } else if (oracle.kind != "exact") {
    throw UsageError("unknown oracle '" + oracle.kind + "'");
  }
  const auto& k = problem.kind;
  if (k != "reg" && k != "logistic" && k != "hinge") {
    throw UsageError("unknown problem '" + k + "'");
  }
  if (k == "reg" && problem.p != 1 && problem.p != 2) throw UsageError("p must be 1 or 2");
  if (k != "reg" && problem.data_path.empty()) {
    throw UsageError("problem '" + k + "' needs a libsvm data file");
  }
}

Method parse_method(const std::string& name) {
  if (name == "accelegrad") return Method::AcceleGrad;
  if (name == "adagrad") return Method::AdaGrad;
  throw UsageError("unknown optimizer '" + name + "'");
}

std::string method_name(Method m) { return m == Method::AcceleGrad ? "accelegrad" : "adagrad"; }

std::shared_ptr<const Objective> build_problem(const ProblemSpec& spec) {
  if (spec.kind == "reg") {
    auto data = spec.container_path.empty()
                    ? generate_regression_data(spec.n, spec.d, spec.sigma2, spec.seed)
                    : load_container(spec.container_path);
    return std::make_shared<RegressionProblem>(
        std::make_shared<const RegressionData>(std::move(data)), spec.p);
  }
  auto ds = std::make_shared<const Dataset>(load_libsvm(spec.data_path));
  const Loss loss = spec.kind == "logistic" ? Loss::Logistic : Loss::Hinge;
  return std::make_shared<ClassificationProblem>(std::move(ds), loss, spec.regularization);
}

Oracle build_oracle(const OracleSpec& spec, std::shared_ptr<const Objective> problem,
                    std::uint64_t seed) {
  const std::uint64_t stream = seed ^ 0x9e3779b97f4a7c15ull;
  if (spec.kind == "minibatch") return Oracle(std::move(problem), MinibatchOracle{spec.batch, stream});
  if (spec.kind == "noise") {
    return Oracle(std::move(problem), GaussianNoiseOracle{spec.noise_sigma, stream});
  }
  return Oracle(std::move(problem), ExactOracle{});
}

double resolve_diameter(const RunConfig& config, const Objective& problem, const Vector& x0) {
  if (config.diameter) return *config.diameter;
  const auto ref = reference_optimum(problem, config.reference_budget);
  const double dist = (x0 - ref.x_star).norm();
  if (!(dist > 0.0)) throw UsageError("rho needs x0 away from the reference optimum");
  return 2.0 * *config.rho * dist;
}

RunResult execute(const RunConfig& config) {
  config.validate();
  return execute(config, build_problem(config.problem));
}

RunResult execute(const RunConfig& config, std::shared_ptr<const Objective> problem) {
  config.validate();
  const Vector x0 = Vector::Zero(static_cast<Eigen::Index>(problem->dim()));
  OptimizerConfig opt;
  opt.method = config.method;
  opt.diameter = resolve_diameter(config, *problem, x0);
  opt.lipschitz = config.lipschitz;
  opt.project_y = config.project_y;
  opt.skip_projection = config.skip_projection;
  Oracle oracle = build_oracle(config.oracle, std::move(problem), config.problem.seed);
  RecordCadence cadence;
  cadence.every = config.cadence;
  return run(opt, oracle, x0, config.T, cadence);
}

}  // namespace acgd
