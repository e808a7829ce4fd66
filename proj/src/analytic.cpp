#include <cmath>

#include "acgd/problems.hpp"

namespace acgd {

ScaledQuadratic::ScaledQuadratic(double beta, Vector center)
    : beta_(beta), center_(std::move(center)) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw UsageError("beta must be finite and >= 0");
}

ValueGrad ScaledQuadratic::value_and_subgradient(const Vector& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "ScaledQuadratic");
  Vector diff = x - center_;
  return {0.5 * beta_ * diff.squaredNorm(), beta_ * diff};
}

std::optional<double> ScaledQuadratic::lipschitz_closed_form(const Ball& ball) const {
  return beta_ * ((ball.center() - center_).norm() + ball.radius());
}

L1Distance::L1Distance(Vector center) : center_(std::move(center)) {}

ValueGrad L1Distance::value_and_subgradient(const Vector& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "L1Distance");
  ValueGrad out{0.0, Vector::Zero(x.size())};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double r = x[i] - center_[i];
    out.value += std::abs(r);
    out.grad[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
  }
  return out;
}

std::optional<double> L1Distance::lipschitz_closed_form(const Ball&) const {
  return std::sqrt(static_cast<double>(dim()));
}

LinearObjective::LinearObjective(Vector c) : c_(std::move(c)) {}

ValueGrad LinearObjective::value_and_subgradient(const Vector& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "LinearObjective");
  return {c_.dot(x), c_};
}

std::optional<double> LinearObjective::lipschitz_closed_form(const Ball&) const {
  return c_.norm();
}

}  // namespace acgd
