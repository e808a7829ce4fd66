#include <doctest.h>

#include <sstream>

#include "acgd/acceptance.hpp"
#include "acgd/csv.hpp"
#include "acgd/harness.hpp"

using namespace acgd;

namespace {

RunConfig small_config() {
  RunConfig c;
  c.problem.n = 60;
  c.problem.d = 8;
  c.problem.seed = 4;
  c.rho = 1.0;
  c.T = 200;
  return c;
}

std::string csv_of(const RunConfig& c) {
  std::ostringstream os;
  write_trace_csv(os, execute(c).trace);
  return os.str();
}

}  // namespace

TEST_CASE("config validation") {
  auto c = small_config();
  CHECK_NOTHROW(c.validate());
  c.diameter = 2.0;
  CHECK_THROWS_AS(c.validate(), UsageError);  // both D and rho
  c.rho.reset();
  CHECK_NOTHROW(c.validate());
  c.diameter.reset();
  CHECK_THROWS_AS(c.validate(), UsageError);  // neither

  c = small_config();
  c.T = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small_config();
  c.oracle.kind = "minibatch";
  c.oracle.batch = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small_config();
  c.problem.kind = "logistic";
  CHECK_THROWS_AS(c.validate(), UsageError);  // no data file
  c = small_config();
  c.problem.p = 3;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = small_config();
  c.method = Method::AdaGrad;
  c.project_y = true;
  CHECK_THROWS_AS(c.validate(), UsageError);

  CHECK(parse_method("adagrad") == Method::AdaGrad);
  CHECK(method_name(Method::AcceleGrad) == "accelegrad");
  CHECK_THROWS_AS(parse_method("sgd"), UsageError);
}

TEST_CASE("execute is deterministic for fixed seeds") {
  auto c = small_config();
  c.oracle.kind = "minibatch";
  c.oracle.batch = 3;
  const auto a = csv_of(c);
  CHECK(a == csv_of(c));
  c.problem.seed = 5;
  CHECK(a != csv_of(c));
}

TEST_CASE("T = 1 gives a single record") {
  auto c = small_config();
  c.T = 1;
  const auto r = execute(c);
  REQUIRE(r.trace.records.size() == 1);
  CHECK(r.trace.records[0].iter == 1);
  CHECK(r.trace.records[0].evals == 60);
}

TEST_CASE("rho sets the ball diameter from the reference optimum") {
  auto c = small_config();
  c.problem.sigma2 = 0.0;
  auto problem = build_problem(c.problem);
  const auto& reg = dynamic_cast<const RegressionProblem&>(*problem);
  const double D = resolve_diameter(c, *problem, Vector::Zero(8));
  CHECK(D == doctest::Approx(2.0 * reg.data().x_natural->norm()).epsilon(1e-8));
  c.rho = 0.5;
  CHECK(resolve_diameter(c, *problem, Vector::Zero(8)) == doctest::Approx(D / 2));
}

TEST_CASE("noise oracle runs") {
  auto c = small_config();
  c.oracle.kind = "noise";
  c.oracle.noise_sigma = 0.5;
  c.T = 20;
  CHECK(execute(c).trace.records.size() == 20);
}

TEST_CASE("acceptance selectors") {
  const auto sel = acceptance_selectors();
  for (const char* s : {"all", "criteria", "rates", "lemmas", "invariants", "7", "inv-projection"}) {
    CHECK(std::find(sel.begin(), sel.end(), s) != sel.end());
  }
  AcceptanceOptions o;
  o.only = {"bogus"};
  CHECK_THROWS_AS(run_acceptance(o), UsageError);
}

TEST_CASE("acceptance subset run") {
  AcceptanceOptions o;
  o.only = {"lemmas"};
  std::size_t streamed = 0;
  o.on_result = [&](const CriterionResult&) { ++streamed; };
  const auto r = run_acceptance(o);
  REQUIRE(r.size() == 1);
  CHECK(streamed == 1);
  CHECK(r[0].id == "7");
  CHECK(r[0].passed);
  CHECK(format_result(r[0]).rfind("PASS [7] lemmas", 0) == 0);
}

TEST_CASE("an off-by-one weight is caught by the acceptance suite") {
  AcceptanceOptions o;
  o.only = {"7"};
  o.weight = [](std::size_t t) { return t <= 1 ? 1.0 : (t + 1) / 4.0; };
  const auto r = run_acceptance(o);
  REQUIRE(r.size() == 1);
  CHECK_FALSE(r[0].passed);
  CHECK(r[0].detail.find("weights") != std::string::npos);
  CHECK(format_result(r[0]).rfind("FAIL", 0) == 0);
}
