#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "acgd/linalg.hpp"
#include "acgd/objective.hpp"

namespace acgd {

struct OracleAnswer {
  std::optional<double> value;
  Vector subgradient;
  std::size_t evals = 1;
};

struct ExactOracle {};

/// Average over `batch` indices drawn uniformly without replacement.
struct MinibatchOracle {
  std::size_t batch = 1;
  std::uint64_t seed = 0;
};

/// Exact gradient plus i.i.d. N(0, sigma^2/d) noise per coordinate.
///
/// Experimental: the noise is unbounded, so it does not satisfy the
/// bounded-oracle assumption the convergence guarantees rely on.
struct GaussianNoiseOracle {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

using OracleKind = std::variant<ExactOracle, MinibatchOracle, GaussianNoiseOracle>;

/// First-order information source. Randomized kinds own their generator, so
/// an instance belongs to a single run; copy it to get an independent replay.
class Oracle {
 public:
  Oracle(std::shared_ptr<const Objective> objective, OracleKind kind = ExactOracle{});

  OracleAnswer query(const Vector& x);

  const Objective& objective() const noexcept { return *objective_; }
  std::shared_ptr<const Objective> objective_ptr() const noexcept { return objective_; }
  const OracleKind& kind() const noexcept { return kind_; }
  std::size_t dim() const { return objective_->dim(); }

 private:
  OracleAnswer query_minibatch(const Vector& x, std::size_t batch);

  std::shared_ptr<const Objective> objective_;
  const FiniteSumObjective* finite_sum_ = nullptr;
  OracleKind kind_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> subset_;
};

struct LipschitzBound {
  double value = 0.0;
  /// True when `value` is a sampled estimate rather than a proven bound.
  bool sampled = false;
};

/// Bound G on subgradient norms over `ball`. Falls back to the largest norm
/// seen at `samples` uniformly random points on the ball's boundary.
LipschitzBound lipschitz_bound(const Objective& objective, const Ball& ball,
                               std::size_t samples = 1000, std::uint64_t seed = 0);

}  // namespace acgd
