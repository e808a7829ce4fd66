#include "acgd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace acgd {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x6f7261u};
  return std::mt19937_64(seq);
}

}  // namespace

ValueGrad FiniteSumObjective::value_and_subgradient(const Vector& x) const {
  std::vector<std::size_t> all(num_terms());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return value_and_subgradient(x, all);
}

void FiniteSumObjective::check_subset(std::span<const std::size_t> subset) const {
  if (subset.empty()) throw UsageError("empty subset");
  const auto n = num_terms();
  for (auto i : subset) {
    if (i >= n) {
      throw UsageError("subset index " + std::to_string(i) + " out of range (n = " +
                       std::to_string(n) + ")");
    }
  }
}

Oracle::Oracle(std::shared_ptr<const Objective> objective, OracleKind kind)
    : objective_(std::move(objective)), kind_(kind) {
  if (!objective_) throw UsageError("oracle needs an objective");
  finite_sum_ = dynamic_cast<const FiniteSumObjective*>(objective_.get());
  if (const auto* mb = std::get_if<MinibatchOracle>(&kind_)) {
    if (!finite_sum_) throw UsageError("minibatch oracle needs a finite-sum objective");
    if (mb->batch < 1 || mb->batch > finite_sum_->num_terms()) {
      throw UsageError("minibatch size must lie in [1, " +
                       std::to_string(finite_sum_->num_terms()) + "]");
    }
    rng_ = make_rng(mb->seed);
    perm_.resize(finite_sum_->num_terms());
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  } else if (const auto* gn = std::get_if<GaussianNoiseOracle>(&kind_)) {
    if (!(gn->sigma >= 0.0) || !std::isfinite(gn->sigma)) {
      throw UsageError("noise sigma must be finite and nonnegative");
    }
    rng_ = make_rng(gn->seed);
  }
}

OracleAnswer Oracle::query(const Vector& x) {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "Oracle::query");
  if (!all_finite(x)) throw UsageError("oracle query point is not finite");

  if (const auto* mb = std::get_if<MinibatchOracle>(&kind_)) {
    return query_minibatch(x, mb->batch);
  }
  auto vg = objective_->value_and_subgradient(x);
  if (const auto* gn = std::get_if<GaussianNoiseOracle>(&kind_)) {
    if (gn->sigma > 0.0) {
      std::normal_distribution<double> noise(
          0.0, gn->sigma / std::sqrt(static_cast<double>(x.size())));
      for (Eigen::Index i = 0; i < vg.grad.size(); ++i) vg.grad[i] += noise(rng_);
    }
    return {vg.value, std::move(vg.grad), 1};
  }
  return {vg.value, std::move(vg.grad), objective_->evals_per_full_gradient()};
}

OracleAnswer Oracle::query_minibatch(const Vector& x, std::size_t batch) {
  const std::size_t n = perm_.size();
  subset_.resize(batch);
  if (batch == n) {
    std::iota(subset_.begin(), subset_.end(), std::size_t{0});
  } else {
    // Partial Fisher-Yates: the first `batch` slots become a uniform subset.
    for (std::size_t i = 0; i < batch; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(perm_[i], perm_[pick(rng_)]);
    }
    std::copy_n(perm_.begin(), batch, subset_.begin());
    std::sort(subset_.begin(), subset_.end());
  }
  auto vg = finite_sum_->value_and_subgradient(x, subset_);
  return {vg.value, std::move(vg.grad), batch};
}

LipschitzBound lipschitz_bound(const Objective& objective, const Ball& ball,
                               std::size_t samples, std::uint64_t seed) {
  require_same_dim(objective.dim(), ball.dim(), "lipschitz_bound");
  if (auto g = objective.lipschitz_closed_form(ball)) return {*g, false};

  auto rng = make_rng(seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(ball.dim());
  double best = objective.value_and_subgradient(ball.center()).grad.norm();
  Vector dir(d);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < d; ++i) dir[i] = normal(rng);
    const double len = dir.norm();
    if (len == 0.0) continue;
    Vector p = ball.center() + (ball.radius() / len) * dir;
    best = std::max(best, objective.value_and_subgradient(p).grad.norm());
  }
  return {best, true};
}

}  // namespace acgd
