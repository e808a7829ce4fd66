#include <doctest.h>

#include <cmath>
#include <random>

#include "acgd/analysis.hpp"

using namespace acgd;

TEST_CASE("sqrt-sum sandwich closed forms") {
  const double two[] = {1.0, 1.0};
  const auto s = sqrt_sum_sandwich(two);
  CHECK(s.lhs == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.mid == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)));
  CHECK(s.rhs == doctest::Approx(2.0 * std::sqrt(2.0)));

  const double four[] = {4.0};
  const auto f = sqrt_sum_sandwich(four);
  CHECK(f.lhs == 2.0);
  CHECK(f.mid == 2.0);
  CHECK(f.rhs == 4.0);

  const double leading_zero[] = {0.0, 0.0, 9.0};
  const auto z = sqrt_sum_sandwich(leading_zero);
  CHECK(z.mid == 3.0);

  const double negative[] = {1.0, -1.0};
  CHECK_THROWS_AS(sqrt_sum_sandwich(negative), UsageError);
}

TEST_CASE("log-sum bound closed forms") {
  const double one[] = {1.0};
  const auto s = log_sum_bound(one);
  CHECK(s.lhs == 0.5);
  CHECK(s.rhs == doctest::Approx(1.0 + std::log(2.0)));
  const auto e = log_sum_bound(std::span<const double>{});
  CHECK(e.lhs == 0.0);
  CHECK(e.rhs == 1.0);
  const double negative[] = {-0.5};
  CHECK_THROWS_AS(log_sum_bound(negative), UsageError);
}

TEST_CASE("both sequence inequalities hold on random inputs") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(1, 100);
  std::uniform_real_distribution<double> ex(-15.0, 15.0);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> a(static_cast<std::size_t>(len(rng)));
    for (auto& v : a) v = std::exp(ex(rng));
    const auto s = sqrt_sum_sandwich(a);
    CHECK(holds_with_slack(s.lhs, s.mid));
    CHECK(holds_with_slack(s.mid, s.rhs));
    const auto l = log_sum_bound(a);
    CHECK(holds_with_slack(l.lhs, l.rhs));
  }
}

TEST_CASE("holds_with_slack") {
  CHECK(holds_with_slack(1.0, 1.0));
  CHECK(holds_with_slack(1.0 + 1e-13, 1.0));
  CHECK_FALSE(holds_with_slack(1.0 + 1e-10, 1.0));
  CHECK(holds_with_slack(1.0 + 1e-10, 1.0, 1e-9));
}

TEST_CASE("smooth gradient bound is tight on a pure quadratic") {
  const double beta = 3.0;
  ScaledQuadratic f(beta, Vector::Zero(3));
  Vector x(3);
  x << 1.0, -2.0, 0.5;
  const auto s = smooth_grad_bound_check(f, x, 0.0, beta);
  CHECK(s.lhs == doctest::Approx(beta * beta * x.squaredNorm()));
  CHECK(s.rhs == doctest::Approx(s.lhs));
  const auto at_min = smooth_grad_bound_check(f, Vector::Zero(3), 0.0, beta);
  CHECK(at_min.lhs == 0.0);
  CHECK(at_min.rhs == 0.0);
}

TEST_CASE("power iteration finds the top eigenvalue of A^T A") {
  const auto data = generate_regression_data(40, 6, 0.0, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(data.A.transpose() * data.A);
  const double want = es.eigenvalues().maxCoeff();
  const double got = max_eigenvalue_gram(data.A, 500, 1e-14);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));
  CHECK(got <= want * (1 + 1e-12));
}

TEST_CASE("weight properties") {
  CHECK(check_weight_properties(100000).empty());
  // Weights that drop below 1 make the coupling leave the segment.
  const auto off_by_one = [](std::size_t t) { return t <= 1 ? 1.0 : (t + 1) / 4.0; };
  CHECK_FALSE(check_weight_properties(100, off_by_one).empty());
  // Weights that grow too fast break the increment bound.
  const auto quadratic = [](std::size_t t) { return 1.0 + double(t) * double(t); };
  CHECK_FALSE(check_weight_properties(100, quadratic).empty());
  // Constant weights are too small for the T^2/32 mass.
  CHECK_FALSE(check_weight_properties(100, [](std::size_t) { return 1.0; }).empty());
}

TEST_CASE("rate fits on exact power laws") {
  std::vector<double> t, e2, eh;
  for (int k = 1; k <= 1000; ++k) {
    t.push_back(k);
    e2.push_back(7.0 / (double(k) * double(k)));
    eh.push_back(7.0 / std::sqrt(double(k)));
  }
  const auto f2 = fit_rate_slope(t, e2, 1, 1000);
  CHECK(f2.slope == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(f2.r2 == doctest::Approx(1.0));
  CHECK(f2.points == 1000);
  CHECK(fit_rate_slope(t, eh, 10, 1000).slope == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(std::exp(f2.intercept) == doctest::Approx(7.0));
}

TEST_CASE("rate fits drop points under the noise floor") {
  std::vector<double> t, e;
  for (int k = 1; k <= 100; ++k) {
    t.push_back(k);
    e.push_back(k <= 50 ? 1.0 / k : 0.0);
  }
  const auto f = fit_rate_slope(t, e, 1, 100);
  CHECK(f.points == 50);
  CHECK(f.slope == doctest::Approx(-1.0));
  CHECK_THROWS_AS(fit_rate_slope(t, e, 60, 100), UsageError);
  CHECK_THROWS_AS(fit_rate_slope(std::span<const double>(t).first(5), std::span<const double>(e).first(5), 1, 5),
                  UsageError);
}

TEST_CASE("rate fit on a trace") {
  Trace tr;
  for (std::size_t k = 1; k <= 100; ++k) {
    tr.records.push_back({k, k, 2.0 + 1.0 / double(k * k), 2.0 + 1.0 / double(k), 0.1, 1.0});
  }
  CHECK(fit_rate_slope(tr, 2.0, 10, 100).slope == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(fit_rate_slope(tr, 2.0, 10, 100, Series::Last).slope ==
        doctest::Approx(-1.0).epsilon(1e-6));
}
