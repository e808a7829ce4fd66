#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "acgd/linalg.hpp"

namespace acgd {

struct ValueGrad {
  double value = 0.0;
  Vector grad;
};

/// A convex objective with first-order access.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;

  virtual ValueGrad value_and_subgradient(const Vector& x) const = 0;
  virtual double value(const Vector& x) const { return value_and_subgradient(x).value; }

  /// Closed-form bound on subgradient norms over `ball`, when one exists.
  virtual std::optional<double> lipschitz_closed_form(const Ball& /*ball*/) const {
    return std::nullopt;
  }

  /// Atomic gradient evaluations consumed by one full gradient.
  virtual std::size_t evals_per_full_gradient() const { return 1; }
};

/// Objective of the form F(x) = sum_i f_i(x) (+ an optional non-sampled term).
///
/// Restricted to a subset S the returned value and gradient are rescaled by
/// n/|S|, so a uniformly drawn subset gives an unbiased estimate of the sum.
class FiniteSumObjective : public Objective {
 public:
  virtual std::size_t num_terms() const = 0;

  /// `subset` must be non-empty with indices < num_terms().
  virtual ValueGrad value_and_subgradient(const Vector& x,
                                          std::span<const std::size_t> subset) const = 0;

  ValueGrad value_and_subgradient(const Vector& x) const override;

  std::size_t evals_per_full_gradient() const override { return num_terms(); }

 protected:
  void check_subset(std::span<const std::size_t> subset) const;
};

}  // namespace acgd
