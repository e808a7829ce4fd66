#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "acgd/objective.hpp"
#include "acgd/optimizers.hpp"
#include "acgd/oracle.hpp"
#include "acgd/problems.hpp"

namespace acgd {

struct ProblemSpec {
  std::string kind = "reg";  ///< reg | logistic | hinge
  std::size_t n = 2000;
  std::size_t d = 500;
  int p = 2;
  double sigma2 = 1e-2;
  std::uint64_t seed = 0;
  std::string data_path;       ///< libsvm file (logistic / hinge)
  std::string container_path;  ///< ACGD1 file (reg); overrides n, d, sigma2
  double regularization = 0.0;
};

struct OracleSpec {
  std::string kind = "exact";  ///< exact | minibatch | noise
  std::size_t batch = 1;
  double noise_sigma = 0.0;
};

struct RunConfig {
  ProblemSpec problem;
  Method method = Method::AcceleGrad;
  std::optional<double> diameter;
  std::optional<double> rho;
  double lipschitz = 0.0;
  bool project_y = false;
  bool skip_projection = false;
  OracleSpec oracle;
  std::size_t T = 1000;
  std::size_t cadence = 0;
  std::size_t reference_budget = 20000;

  /// Throws UsageError for invalid combinations.
  void validate() const;
};

Method parse_method(const std::string& name);
std::string method_name(Method m);

std::shared_ptr<const Objective> build_problem(const ProblemSpec& spec);

/// The oracle draws from a stream seeded by the problem seed, separate from
/// the one used for data generation.
Oracle build_oracle(const OracleSpec& spec, std::shared_ptr<const Objective> problem,
                    std::uint64_t seed);

/// D given directly, or D = 2 rho ||x0 - x*|| with x* from reference_optimum.
double resolve_diameter(const RunConfig& config, const Objective& problem, const Vector& x0);

/// Builds problem and oracle, starts at the origin, runs T steps.
RunResult execute(const RunConfig& config);
RunResult execute(const RunConfig& config, std::shared_ptr<const Objective> problem);

}  // namespace acgd
