#include "acgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace acgd {

namespace {

void require_nonnegative(std::span<const double> a) {
  for (double v : a) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("inputs must be finite and >= 0");
  }
}

}  // namespace

bool holds_with_slack(double lhs, double rhs, double slack) {
  return lhs <= rhs + slack * (1.0 + std::abs(rhs));
}

SqrtSumSandwich sqrt_sum_sandwich(std::span<const double> a) {
  require_nonnegative(a);
  double prefix = 0.0;
  SqrtSumSandwich out;
  for (double v : a) {
    prefix += v;
    if (prefix > 0.0) out.mid += v / std::sqrt(prefix);
  }
  out.lhs = std::sqrt(prefix);
  out.rhs = 2.0 * out.lhs;
  return out;
}

LogSumBound log_sum_bound(std::span<const double> a) {
  require_nonnegative(a);
  double prefix = 0.0;
  LogSumBound out;
  for (double v : a) {
    prefix += v;
    out.lhs += v / (1.0 + prefix);
  }
  out.rhs = 1.0 + std::log1p(prefix);
  return out;
}

SmoothGradBound smooth_grad_bound_check(const Objective& f, const Vector& x, double f_star,
                                        double beta) {
  auto vg = f.value_and_subgradient(x);
  return {vg.grad.squaredNorm(), 2.0 * beta * (vg.value - f_star)};
}

double max_eigenvalue_gram(const RowMatrix& A, std::size_t max_iterations, double rel_tol,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(A.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  v.normalize();
  double lambda = 0.0;
  for (std::size_t k = 0; k < max_iterations; ++k) {
    Vector w = A.transpose() * (A * v);
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    const bool done = k > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next);
    lambda = next;
    if (done) break;
  }
  return lambda;
}

std::string check_weight_properties(std::size_t t_max,
                                    const std::function<double(std::size_t)>& weight) {
  std::ostringstream msg;
  double prev = 0.0;
  double sum = 0.0;
  for (std::size_t t = 0; t <= t_max; ++t) {
    const double a = weight(t);
    if (!(a >= 1.0) || !std::isfinite(a)) {
      msg << "tau_t = 1/alpha_t outside (0, 1] at t = " << t << " (alpha = " << a << ")";
      return msg.str();
    }
    if (a > static_cast<double>(t + 1)) {
      msg << "alpha_t > t + 1 at t = " << t;
      return msg.str();
    }
    if (t >= 1 && (a * a - a) - (prev * prev - prev) > prev / 2.0) {
      msg << "weight increment bound fails at t = " << t;
      return msg.str();
    }
    sum += a;
    const double T = static_cast<double>(t + 1);
    if (sum < T * T / 32.0) {
      msg << "sum of weights below T^2/32 at T = " << t + 1;
      return msg.str();
    }
    prev = a;
  }
  return {};
}

RateFit fit_rate_slope(std::span<const double> t, std::span<const double> err, double t_min,
                       double t_max) {
  if (t.size() != err.size()) throw UsageError("fit_rate_slope: length mismatch");
  if (!(t_min < t_max)) throw UsageError("fit_rate_slope: empty window");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max || t[i] <= 0.0) continue;
    if (!(err[i] >= kNoiseFloor) || !std::isfinite(err[i])) continue;
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(err[i]));
  }
  if (lx.size() < 10) {
    throw UsageError("fit_rate_slope: only " + std::to_string(lx.size()) +
                     " usable points in window (need 10)");
  }
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw UsageError("fit_rate_slope: all points share one t");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.points = lx.size();
  return fit;
}

RateFit fit_rate_slope(const Trace& trace, double f_star, double t_min, double t_max,
                       Series series) {
  std::vector<double> t, err;
  t.reserve(trace.records.size());
  err.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    t.push_back(static_cast<double>(r.iter));
    err.push_back((series == Series::Averaged ? r.f_avg : r.f_last) - f_star);
  }
  return fit_rate_slope(t, err, t_min, t_max);
}

}  // namespace acgd
