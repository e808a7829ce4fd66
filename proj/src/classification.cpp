#include <cmath>
#include <string>

#include "acgd/problems.hpp"

namespace acgd {

namespace {

// log(1 + exp(-m)) without overflow.
double logistic_loss(double margin) {
  return margin > 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

// d/dm log(1 + exp(-m)) = -1 / (1 + exp(m))
double logistic_slope(double margin) {
  if (margin > 0.0) {
    const double e = std::exp(-margin);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(margin));
}

}  // namespace

void Dataset::validate() const {
  if (rows.size() != labels.size()) throw UsageError("dataset: rows and labels differ in count");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dim() != dim) {
      throw UsageError("dataset: row " + std::to_string(i) + " has inconsistent dimension");
    }
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw UsageError("dataset: label of row " + std::to_string(i) + " is not +-1");
    }
  }
}

ClassificationProblem::ClassificationProblem(std::shared_ptr<const Dataset> data, Loss loss,
                                             double regularization)
    : data_(std::move(data)), loss_(loss), reg_(regularization) {
  if (!data_) throw UsageError("classification problem needs data");
  data_->validate();
  if (data_->size() < 1 || data_->dim < 1) throw UsageError("classification needs n, d >= 1");
  if (!(reg_ >= 0.0) || !std::isfinite(reg_)) {
    throw UsageError("regularization must be finite and >= 0");
  }
}

ValueGrad ClassificationProblem::value_and_subgradient(
    const Vector& x, std::span<const std::size_t> subset) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "ClassificationProblem");
  check_subset(subset);
  ValueGrad out{0.0, Vector::Zero(x.size())};
  for (auto i : subset) {
    const auto& row = data_->rows[i];
    const double y = data_->labels[i];
    const double margin = y * dot(row, x);
    if (loss_ == Loss::Logistic) {
      out.value += logistic_loss(margin);
      axpy_inplace(y * logistic_slope(margin), row, out.grad);
    } else if (margin < 1.0) {
      out.value += 1.0 - margin;
      axpy_inplace(-y, row, out.grad);
    }
  }
  if (subset.size() != num_terms()) {
    const double scale = static_cast<double>(num_terms()) / static_cast<double>(subset.size());
    out.value *= scale;
    out.grad *= scale;
  }
  if (reg_ > 0.0) {
    out.value += 0.5 * reg_ * x.squaredNorm();
    out.grad += reg_ * x;
  }
  return out;
}

double ClassificationProblem::value(const Vector& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "ClassificationProblem");
  double v = 0.0;
  for (std::size_t i = 0; i < data_->size(); ++i) {
    const double margin = data_->labels[i] * dot(data_->rows[i], x);
    v += loss_ == Loss::Logistic ? logistic_loss(margin) : std::max(0.0, 1.0 - margin);
  }
  return v + 0.5 * reg_ * x.squaredNorm();
}

std::optional<double> ClassificationProblem::lipschitz_closed_form(const Ball& ball) const {
  // Both losses have slope magnitude at most 1 in the margin.
  double g = 0.0;
  for (const auto& row : data_->rows) g += norm2(row);
  return g + reg_ * (ball.center().norm() + ball.radius());
}

}  // namespace acgd
