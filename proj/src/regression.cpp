#include <cmath>
#include <random>

#include "acgd/problems.hpp"

namespace acgd {

RegressionProblem::RegressionProblem(std::shared_ptr<const RegressionData> data, int p)
    : data_(std::move(data)), p_(p) {
  if (!data_) throw UsageError("regression problem needs data");
  if (p != 1 && p != 2) throw UsageError("regression exponent p must be 1 or 2");
  if (data_->A.rows() < 1 || data_->A.cols() < 1) throw UsageError("regression needs n, d >= 1");
  if (data_->b.size() != data_->A.rows()) throw UsageError("regression: b must have n entries");
  if (data_->x_natural && data_->x_natural->size() != data_->A.cols()) {
    throw UsageError("regression: x_natural must have d entries");
  }
}

ValueGrad RegressionProblem::value_and_subgradient(const Vector& x,
                                                   std::span<const std::size_t> subset) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "RegressionProblem");
  check_subset(subset);
  const auto& A = data_->A;
  const auto& b = data_->b;
  ValueGrad out{0.0, Vector::Zero(x.size())};
  for (auto i : subset) {
    const auto row = static_cast<Eigen::Index>(i);
    const double r = A.row(row).dot(x) - b[row];
    if (p_ == 2) {
      out.value += r * r;
      out.grad.noalias() += (2.0 * r) * A.row(row).transpose();
    } else {
      out.value += std::abs(r);
      if (r > 0.0) {
        out.grad += A.row(row).transpose();
      } else if (r < 0.0) {
        out.grad -= A.row(row).transpose();
      }
    }
  }
  if (subset.size() != num_terms()) {
    const double scale = static_cast<double>(num_terms()) / static_cast<double>(subset.size());
    out.value *= scale;
    out.grad *= scale;
  }
  return out;
}

double RegressionProblem::value(const Vector& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "RegressionProblem");
  const auto& A = data_->A;
  const auto& b = data_->b;
  double v = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double r = A.row(i).dot(x) - b[i];
    v += p_ == 2 ? r * r : std::abs(r);
  }
  return v;
}

RegressionData generate_regression_data(std::size_t n, std::size_t d, double sigma2,
                                        std::uint64_t seed) {
  if (n < 1 || d < 1) throw UsageError("generate_regression: n and d must be >= 1");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw UsageError("generate_regression: sigma2 must be finite and >= 0");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x72656775u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  RegressionData data;
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);
  data.A.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) data.A(i, j) = normal(rng);
  }
  Vector x_nat(cols);
  for (Eigen::Index j = 0; j < cols; ++j) x_nat[j] = normal(rng);

  const double sigma = std::sqrt(sigma2);
  data.b.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double noise = sigma2 > 0.0 ? sigma * normal(rng) : 0.0;
    data.b[i] = data.A.row(i).dot(x_nat) + noise;
  }
  data.x_natural = std::move(x_nat);
  return data;
}

RegressionProblem generate_regression(std::size_t n, std::size_t d, double sigma2, int p,
                                      std::uint64_t seed) {
  return RegressionProblem(
      std::make_shared<const RegressionData>(generate_regression_data(n, d, sigma2, seed)), p);
}

}  // namespace acgd
