#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acgd/errors.hpp"

namespace acgd {

/// Dense iterate / gradient storage. Entries are 64-bit floats.
using Vector = Eigen::VectorXd;

bool all_finite(const Vector& x);

/// Sparse vector with strictly increasing indices and nonzero finite values.
class SparseVector {
 public:
  struct Entry {
    std::size_t index;
    double value;
  };

  explicit SparseVector(std::size_t dim = 0) : dim_(dim) {}

  /// Validates the entries. Explicit zeros are dropped.
  SparseVector(std::size_t dim, std::span<const Entry> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return indices_.size(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const std::vector<double>& values() const noexcept { return values_; }

  Vector to_dense() const;

  /// Rebinds the ambient dimension; every stored index must stay below it.
  void set_dim(std::size_t dim);

 private:
  std::size_t dim_;
  std::vector<std::size_t> indices_;
  std::vector<double> values_;
};

/// Closed Euclidean ball. The diameter is twice the radius.
class Ball {
 public:
  Ball(Vector center, double radius);

  const Vector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  double diameter() const noexcept { return 2.0 * radius_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(center_.size()); }

  /// ||x - center|| <= radius * (1 + rel_tol)
  bool contains(const Vector& x, double rel_tol = 1e-12) const;

 private:
  Vector center_;
  double radius_;
};

/// Euclidean projection onto the ball. Points at distance exactly `radius`
/// are returned unchanged.
Vector project_ball(const Vector& x, const Ball& ball);

double norm2(const Vector& x);
double norm2(const SparseVector& x);

double dot(const Vector& a, const Vector& b);
double dot(const SparseVector& a, const Vector& b);

/// Returns y + alpha * x.
Vector axpy(double alpha, const Vector& x, const Vector& y);
Vector axpy(double alpha, const SparseVector& x, const Vector& y);

/// y += alpha * x, in place.
void axpy_inplace(double alpha, const SparseVector& x, Vector& y);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace acgd
