#include <doctest.h>

#include <random>
#include <sstream>

#include "acgd/problems.hpp"

using namespace acgd;

namespace {

std::shared_ptr<RegressionData> identity_data(std::size_t n, const Vector& b) {
  auto data = std::make_shared<RegressionData>();
  data->A = RowMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  data->b = b;
  return data;
}

}  // namespace

TEST_CASE("p = 2 regression on the identity") {
  RegressionProblem f(identity_data(2, Vector::Zero(2)), 2);
  const auto vg = f.value_and_subgradient(Vector::Ones(2));
  CHECK(vg.value == 2.0);
  CHECK(vg.grad == Vector::Constant(2, 2.0));
  CHECK(f.value(Vector::Ones(2)) == 2.0);
  CHECK(f.evals_per_full_gradient() == 2);
}

TEST_CASE("p = 1 regression uses sign(0) = 0 at the kink") {
  RegressionProblem f(identity_data(1, Vector::Zero(1)), 1);
  const auto vg = f.value_and_subgradient(Vector::Zero(1));
  CHECK(vg.value == 0.0);
  CHECK(vg.grad[0] == 0.0);
  Vector x(1);
  x << -3.0;
  const auto away = f.value_and_subgradient(x);
  CHECK(away.value == 3.0);
  CHECK(away.grad[0] == -1.0);
}

TEST_CASE("regression subsets rescale by n / |S|") {
  Vector b(3);
  b << 1, 2, 3;
  RegressionProblem f(identity_data(3, b), 2);
  const std::size_t s[] = {1};
  const auto vg = f.value_and_subgradient(Vector::Zero(3), s);
  CHECK(vg.value == doctest::Approx(3.0 * 4.0));
  CHECK(vg.grad[0] == 0.0);
  CHECK(vg.grad[1] == doctest::Approx(3.0 * -4.0));
  CHECK(vg.grad[2] == 0.0);

  CHECK_THROWS_AS(f.value_and_subgradient(Vector::Zero(3), std::span<const std::size_t>{}),
                  UsageError);
  const std::size_t outside[] = {3};
  CHECK_THROWS_AS(f.value_and_subgradient(Vector::Zero(3), outside), UsageError);
  CHECK_THROWS_AS(RegressionProblem(identity_data(3, b), 3), UsageError);
}

TEST_CASE("generated regression: planted solution and replay") {
  auto a = generate_regression_data(50, 8, 0.0, 42);
  REQUIRE(a.x_natural);
  RegressionProblem f2(std::make_shared<const RegressionData>(a), 2);
  CHECK(f2.value(*a.x_natural) == 0.0);

  auto b = generate_regression_data(50, 8, 0.0, 42);
  CHECK(a.A == b.A);
  CHECK(a.b == b.b);
  CHECK(*a.x_natural == *b.x_natural);

  auto c = generate_regression_data(50, 8, 0.0, 43);
  CHECK(a.A != c.A);

  auto noisy = generate_regression_data(2000, 3, 1e-2, 1);
  const Vector w = noisy.b - noisy.A * *noisy.x_natural;
  const double var = w.squaredNorm() / static_cast<double>(w.size());
  CHECK(var == doctest::Approx(1e-2).epsilon(0.1));
}

TEST_CASE("generated regression at the default size") {
  auto data = generate_regression_data(2000, 500, 1e-2, 7);
  CHECK(data.A.rows() == 2000);
  CHECK(data.A.cols() == 500);
  CHECK(data.b.size() == 2000);
  // Entries are standard normal.
  const double mean = data.A.mean();
  const double var = (data.A.array() - mean).square().mean();
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("analytic objectives") {
  Vector c(2);
  c << 1, -2;
  ScaledQuadratic q(2.0, c);
  const auto vg = q.value_and_subgradient(Vector::Zero(2));
  CHECK(vg.value == doctest::Approx(5.0));
  CHECK(vg.grad == -2.0 * c);

  L1Distance l1(c);
  const auto v1 = l1.value_and_subgradient(Vector::Zero(2));
  CHECK(v1.value == 3.0);
  CHECK(v1.grad[0] == -1.0);
  CHECK(v1.grad[1] == 1.0);
  CHECK(l1.value_and_subgradient(c).grad == Vector::Zero(2));

  LinearObjective lin(c);
  CHECK(lin.value(Vector::Ones(2)) == -1.0);
  CHECK(lin.value_and_subgradient(Vector::Ones(2)).grad == c);
}

TEST_CASE("classification losses") {
  auto ds = std::make_shared<Dataset>();
  ds->dim = 2;
  const SparseVector::Entry r0[] = {{0, 1.0}};
  const SparseVector::Entry r1[] = {{1, 2.0}};
  ds->rows = {SparseVector(2, r0), SparseVector(2, r1)};
  ds->labels = {1.0, -1.0};

  ClassificationProblem logistic(ds, Loss::Logistic, 0.0);
  CHECK(logistic.value(Vector::Zero(2)) == doctest::Approx(2.0 * std::log(2.0)));
  const auto g = logistic.value_and_subgradient(Vector::Zero(2)).grad;
  CHECK(g[0] == doctest::Approx(-0.5));
  CHECK(g[1] == doctest::Approx(1.0));

  // Large margins stay finite.
  Vector far(2);
  far << 800.0, -800.0;
  CHECK(std::isfinite(logistic.value(far)));
  CHECK(logistic.value(-far) == doctest::Approx(800.0 + 1600.0));

  ClassificationProblem hinge(ds, Loss::Hinge, 0.0);
  CHECK(hinge.value(Vector::Zero(2)) == 2.0);
  Vector kink(2);
  kink << 1.0, 0.0;  // margin of row 0 is exactly 1
  const auto hk = hinge.value_and_subgradient(kink);
  CHECK(hk.grad[0] == 0.0);

  ClassificationProblem reg(ds, Loss::Hinge, 0.5);
  Vector x(2);
  x << 3.0, -3.0;  // both margins >= 1, so only the regularizer is left
  CHECK(reg.value(x) == doctest::Approx(0.25 * 18.0));
  CHECK(reg.value_and_subgradient(x).grad == 0.5 * x);

  // The regularizer is not rescaled on subsets.
  const std::size_t s[] = {0};
  CHECK(reg.value_and_subgradient(x, s).value == doctest::Approx(0.25 * 18.0));
}

TEST_CASE("dataset validation") {
  Dataset ds;
  ds.dim = 2;
  ds.rows = {SparseVector(2)};
  ds.labels = {0.5};
  CHECK_THROWS_AS(ds.validate(), UsageError);
  ds.labels = {1.0, -1.0};
  CHECK_THROWS_AS(ds.validate(), UsageError);
}

TEST_CASE("libsvm parsing") {
  std::istringstream in("1 3:0.5 7:1.2\n-1\n");
  const auto ds = parse_libsvm(in);
  REQUIRE(ds.size() == 2);
  CHECK(ds.labels[0] == 1.0);
  CHECK(ds.rows[0].indices() == std::vector<std::size_t>{2, 6});
  CHECK(ds.rows[0].values() == std::vector<double>{0.5, 1.2});
  CHECK(ds.labels[1] == -1.0);
  CHECK(ds.rows[1].nnz() == 0);
  CHECK(ds.dim == 7);
}

TEST_CASE("libsvm label forms, comments and dimension override") {
  std::istringstream in("+1 1:1 # trailing\n0 2:3\n\n# only a comment\n-1 qid:4 1:2\n");
  const auto ds = parse_libsvm(in, 10);
  REQUIRE(ds.size() == 3);
  CHECK(ds.labels == std::vector<double>{1.0, -1.0, -1.0});
  CHECK(ds.dim == 10);
  for (const auto& r : ds.rows) CHECK(r.dim() == 10);

  std::istringstream small("1 5:1\n");
  CHECK_THROWS_AS(parse_libsvm(small, 3), ParseError);
}

TEST_CASE("libsvm errors carry the line number") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_libsvm(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 1:1\n1 3:1 2:1\n") == 2);  // non-increasing indices
  CHECK(line_of("1 2:1 2:1\n") == 1);         // repeated index
  CHECK(line_of("1 1:1\n\n1 0:1\n") == 3);    // indices are 1-based
  CHECK(line_of("1 a:1\n") == 1);
  CHECK(line_of("1 1:x\n") == 1);
  CHECK(line_of("1 1\n") == 1);
  CHECK(line_of("abc 1:1\n") == 1);
  CHECK(line_of("2 1:1\n") == 1);             // labels must be +-1 or 0
}

TEST_CASE("libsvm file loading") {
  CHECK_THROWS_AS(load_libsvm("/nonexistent/file.svm"), IoError);
}

TEST_CASE("ACGD1 container round-trip") {
  const auto data = generate_regression_data(7, 3, 0.1, 9);
  std::stringstream buf;
  write_container(buf, data);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 5 + 16 + 8 * (7 * 3 + 7 + 3));
  CHECK(bytes.substr(0, 5) == "ACGD1");
  // n is little-endian.
  CHECK(static_cast<unsigned char>(bytes[5]) == 7);
  for (int i = 6; i < 13; ++i) CHECK(bytes[i] == 0);

  const auto back = read_container(buf);
  CHECK(back.A == data.A);
  CHECK(back.b == data.b);
  REQUIRE(back.x_natural);
  CHECK(*back.x_natural == *data.x_natural);
}

TEST_CASE("ACGD1 container without planted solution") {
  RegressionData data;
  data.A = RowMatrix::Ones(2, 2);
  data.b = Vector::Ones(2);
  std::stringstream buf;
  write_container(buf, data);
  CHECK_FALSE(read_container(buf).x_natural.has_value());
}

TEST_CASE("ACGD1 container rejects damaged input") {
  const auto data = generate_regression_data(4, 2, 0.1, 1);
  std::stringstream buf;
  write_container(buf, data);
  const std::string bytes = buf.str();

  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_container(truncated), ParseError);
  std::string bad_magic = bytes;
  bad_magic[4] = '2';
  std::istringstream magic(bad_magic);
  CHECK_THROWS_AS(read_container(magic), ParseError);
  CHECK_THROWS_AS(load_container("/nonexistent/x.acgd"), IoError);
}

TEST_CASE("reference optimum for least squares") {
  Vector b(2);
  b << 1, 2;
  RegressionProblem f(identity_data(2, b), 2);
  const auto ref = reference_optimum(f, 100);
  CHECK(ref.exact);
  CHECK(ref.f_star == doctest::Approx(0.0));
  CHECK(ref.x_star[0] == doctest::Approx(1.0));
  CHECK(ref.x_star[1] == doctest::Approx(2.0));

  auto planted = generate_regression(100, 10, 0.0, 2, 3);
  const auto r2 = reference_optimum(planted, 1000);
  CHECK(r2.exact);
  CHECK(r2.f_star < 1e-18);
  CHECK((r2.x_star - *planted.data().x_natural).norm() < 1e-9);
}

TEST_CASE("CG solves the normal equations") {
  const auto data = generate_regression_data(60, 12, 0.5, 4);
  const auto cg = solve_least_squares_cg(data.A, data.b, 500);
  CHECK(cg.converged);
  const Vector direct = data.A.colPivHouseholderQr().solve(data.b);
  CHECK((cg.x - direct).norm() < 1e-9 * (1 + direct.norm()));
}

TEST_CASE("reference optimum for least absolute deviations is certified") {
  // Optimum of sum |x - b_i| is any median; the value is independent of the choice.
  auto data = std::make_shared<RegressionData>();
  data->A = RowMatrix::Ones(5, 1);
  data->b.resize(5);
  data->b << 1, 2, 7, 10, 30;
  RegressionProblem f(data, 1);
  const auto ref = reference_optimum(f, 1000);
  CHECK(ref.exact);
  CHECK(ref.f_star == doctest::Approx(6 + 5 + 0 + 3 + 23));

  // Nothing sampled gets below the certified value.
  auto prob = generate_regression(80, 6, 1e-2, 1, 12);
  const auto r = reference_optimum(prob, 2000);
  CHECK(r.exact);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1e-3);
  for (int k = 0; k < 200; ++k) {
    Vector x = r.x_star;
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += n(rng);
    CHECK(prob.value(x) >= r.f_star - 1e-9);
  }
}

TEST_CASE("reference optimum estimate for classification") {
  auto ds = std::make_shared<Dataset>();
  ds->dim = 1;
  const SparseVector::Entry one[] = {{0, 1.0}};
  ds->rows = {SparseVector(1, one), SparseVector(1, one)};
  ds->labels = {1.0, -1.0};
  ClassificationProblem f(ds, Loss::Logistic, 0.0);
  const auto ref = reference_optimum(f, 2000);
  CHECK_FALSE(ref.exact);
  CHECK(ref.f_star == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-6));
}
