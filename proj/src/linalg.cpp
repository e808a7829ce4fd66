#include "acgd/linalg.hpp"

#include <cmath>
#include <string>

namespace acgd {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

bool all_finite(const Vector& x) { return x.allFinite(); }

SparseVector::SparseVector(std::size_t dim, std::span<const Entry> entries) : dim_(dim) {
  indices_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.index >= dim) {
      throw UsageError("sparse index " + std::to_string(e.index) + " out of range for dim " +
                       std::to_string(dim));
    }
    if (k > 0 && e.index <= entries[k - 1].index) {
      throw UsageError("sparse indices must be strictly increasing");
    }
    if (!std::isfinite(e.value)) {
      throw UsageError("sparse value is not finite");
    }
    if (e.value == 0.0) continue;
    indices_.push_back(e.index);
    values_.push_back(e.value);
  }
}

void SparseVector::set_dim(std::size_t dim) {
  if (!indices_.empty() && indices_.back() >= dim) {
    throw UsageError("sparse dimension " + std::to_string(dim) + " too small for index " +
                     std::to_string(indices_.back()));
  }
  dim_ = dim;
}

Vector SparseVector::to_dense() const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    out[static_cast<Eigen::Index>(indices_[k])] = values_[k];
  }
  return out;
}

Ball::Ball(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw UsageError("ball radius must be positive and finite");
  }
  if (!all_finite(center_)) throw UsageError("ball center must be finite");
}

bool Ball::contains(const Vector& x, double rel_tol) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "Ball::contains");
  return (x - center_).norm() <= radius_ * (1.0 + rel_tol);
}

Vector project_ball(const Vector& x, const Ball& ball) {
  require_same_dim(static_cast<std::size_t>(x.size()), ball.dim(), "project_ball");
  Vector diff = x - ball.center();
  const double dist = diff.norm();
  if (dist <= ball.radius()) return x;
  return ball.center() + (ball.radius() / dist) * diff;
}

double norm2(const Vector& x) { return x.norm(); }

double norm2(const SparseVector& x) {
  double sq = 0.0;
  for (double v : x.values()) sq += v * v;
  return std::sqrt(sq);
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size()),
                   "dot");
  return a.dot(b);
}

double dot(const SparseVector& a, const Vector& b) {
  require_same_dim(a.dim(), static_cast<std::size_t>(b.size()), "dot");
  const auto& idx = a.indices();
  const auto& val = a.values();
  double s = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    s += val[k] * b[static_cast<Eigen::Index>(idx[k])];
  }
  return s;
}

Vector axpy(double alpha, const Vector& x, const Vector& y) {
  require_same_dim(static_cast<std::size_t>(x.size()), static_cast<std::size_t>(y.size()),
                   "axpy");
  return y + alpha * x;
}

Vector axpy(double alpha, const SparseVector& x, const Vector& y) {
  Vector out = y;
  axpy_inplace(alpha, x, out);
  return out;
}

void axpy_inplace(double alpha, const SparseVector& x, Vector& y) {
  require_same_dim(x.dim(), static_cast<std::size_t>(y.size()), "axpy");
  const auto& idx = x.indices();
  const auto& val = x.values();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    y[static_cast<Eigen::Index>(idx[k])] += alpha * val[k];
  }
}

}  // namespace acgd
