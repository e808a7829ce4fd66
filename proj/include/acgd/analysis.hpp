#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "acgd/linalg.hpp"
#include "acgd/objective.hpp"
#include "acgd/optimizers.hpp"
#include "acgd/problems.hpp"

namespace acgd {

/// lhs <= rhs up to an additive roundoff budget of slack * (1 + |rhs|).
bool holds_with_slack(double lhs, double rhs, double slack = 1e-12);

struct SqrtSumSandwich {
  double lhs = 0.0;  ///< sqrt(sum a)
  double mid = 0.0;  ///< sum a_i / sqrt(sum_{j <= i} a_j), zero-prefix terms skipped
  double rhs = 0.0;  ///< 2 sqrt(sum a)
};

SqrtSumSandwich sqrt_sum_sandwich(std::span<const double> a);

struct LogSumBound {
  double lhs = 0.0;  ///< sum a_i / (1 + sum_{j <= i} a_j)
  double rhs = 1.0;  ///< 1 + log(1 + sum a)
};

LogSumBound log_sum_bound(std::span<const double> a);

struct SmoothGradBound {
  double lhs = 0.0;  ///< ||grad F(x)||^2
  double rhs = 0.0;  ///< 2 beta (F(x) - f_star)
};

SmoothGradBound smooth_grad_bound_check(const Objective& f, const Vector& x, double f_star,
                                        double beta);

/// Largest eigenvalue of A^T A by power iteration; the smoothness of
/// ||Ax - b||^2 is twice this. Stops after `max_iterations` or when the
/// Rayleigh quotient changes by less than `rel_tol`.
double max_eigenvalue_gram(const RowMatrix& A, std::size_t max_iterations = 50,
                           double rel_tol = 1e-9, std::uint64_t seed = 0);

/// Checks the importance weights over t = 0 .. t_max:
///  * 1/alpha_t in (0, 1] (the coupling is a convex combination),
///  * (a_t^2 - a_t) - (a_{t-1}^2 - a_{t-1}) <= a_{t-1} / 2,
///  * alpha_t <= t + 1,
///  * sum_{t < T} alpha_t >= T^2 / 32 for every T <= t_max.
/// Returns an empty string when everything holds, otherwise the first failure.
std::string check_weight_properties(std::size_t t_max,
                                    const std::function<double(std::size_t)>& weight = alpha);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
};

/// Below this suboptimality a point is treated as numerical noise.
inline constexpr double kNoiseFloor = 1e-13;

/// Least-squares line through (log t, log err) for t in [t_min, t_max] and
/// err >= kNoiseFloor. Needs at least 10 usable points.
RateFit fit_rate_slope(std::span<const double> t, std::span<const double> err, double t_min,
                       double t_max);

enum class Series { Averaged, Last };

/// Fit on F - f_star of a trace's averaged or last-iterate column.
RateFit fit_rate_slope(const Trace& trace, double f_star, double t_min, double t_max,
                       Series series = Series::Averaged);

}  // namespace acgd
