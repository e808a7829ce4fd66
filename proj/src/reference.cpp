#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "acgd/optimizers.hpp"
#include "acgd/problems.hpp"

namespace acgd {

CgResult solve_least_squares_cg(const RowMatrix& A, const Vector& b, std::size_t max_iterations,
                                double tolerance) {
  // CGNR: conjugate gradient on A^T A x = A^T b, starting at 0.
  CgResult res;
  res.x = Vector::Zero(A.cols());
  Vector r = A.transpose() * b;
  const double r0 = r.norm();
  if (r0 == 0.0) {
    res.converged = true;
    return res;
  }
  Vector p = r;
  double rr = r.squaredNorm();
  for (std::size_t k = 0; k < max_iterations; ++k) {
    Vector Ap = A * p;
    const double denom = Ap.squaredNorm();
    if (denom == 0.0) break;
    const double step = rr / denom;
    res.x += step * p;
    // Recompute the residual every few steps to limit drift.
    if ((k + 1) % 25 == 0) {
      r = A.transpose() * (b - A * res.x);
    } else {
      r -= step * (A.transpose() * Ap);
    }
    res.iterations = k + 1;
    const double rr_next = r.squaredNorm();
    res.relative_residual = std::sqrt(rr_next) / r0;
    if (res.relative_residual <= tolerance) {
      res.converged = true;
      break;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (!res.converged) {
    res.relative_residual = (A.transpose() * (b - A * res.x)).norm() / r0;
    res.converged = res.relative_residual <= tolerance;
  }
  return res;
}

namespace {

/// Least absolute deviations by vertex descent. The optimum of
/// sum |a_i . x - b_i| is attained where d residuals vanish; from such a
/// vertex, release the zero row whose multiplier exceeds 1 in magnitude and
/// line-search the piecewise-linear objective to the next vertex. Stops once
/// all multipliers lie in [-1, 1], which certifies optimality.
/// Returns true when the certificate holds.
bool refine_lad(const RegressionProblem& prob, ReferenceOptimum& best) {
  const auto& A = prob.data().A;
  const auto& b = prob.data().b;
  const auto n = A.rows();
  const auto d = A.cols();
  if (n < d) return false;

  // IRLS gets close enough to pick a starting vertex.
  Vector x = best.x_star;
  double eps = 1e-2;
  for (int it = 0; it < 60; ++it) {
    Vector r = A * x - b;
    Vector w = (r.array().abs().max(eps)).inverse().matrix();
    Eigen::MatrixXd H = A.transpose() * w.asDiagonal() * A;
    Vector next = H.ldlt().solve(A.transpose() * w.asDiagonal() * b);
    if (!next.allFinite()) break;
    x = std::move(next);
    eps = std::max(eps * 0.5, 1e-12);
  }

  std::vector<Eigen::Index> zero_rows(static_cast<std::size_t>(d));
  {
    Vector r = (A * x - b).cwiseAbs();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::partial_sort(order.begin(), order.begin() + d, order.end(),
                      [&](auto i, auto j) { return r[i] < r[j]; });
    std::copy_n(order.begin(), d, zero_rows.begin());
  }

  std::vector<char> in_zero(static_cast<std::size_t>(n), 0);
  bool certified = false;
  const std::size_t max_pivots = 50 * static_cast<std::size_t>(n);
  for (std::size_t pivot = 0; pivot < max_pivots; ++pivot) {
    Eigen::MatrixXd Az(d, d);
    Vector bz(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      Az.row(k) = A.row(zero_rows[static_cast<std::size_t>(k)]);
      bz[k] = b[zero_rows[static_cast<std::size_t>(k)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Az);
    if (!lu.isInvertible()) break;
    x = lu.solve(bz);
    std::fill(in_zero.begin(), in_zero.end(), 0);
    for (auto i : zero_rows) in_zero[static_cast<std::size_t>(i)] = 1;

    Vector r = A * x - b;
    Vector c = Vector::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (in_zero[static_cast<std::size_t>(i)]) continue;
      if (r[i] > 0.0) c += A.row(i).transpose();
      else if (r[i] < 0.0) c -= A.row(i).transpose();
    }
    Vector u = lu.transpose().solve(c);
    Eigen::Index k = 0;
    const double worst = u.cwiseAbs().maxCoeff(&k);
    if (worst <= 1.0 + 1e-9) {
      certified = true;
      break;
    }
    // Direction releasing zero row k with the sign that decreases F.
    const double sigma = u[k] > 0.0 ? -1.0 : 1.0;
    Vector ek = Vector::Zero(d);
    ek[k] = sigma;
    Vector delta = lu.solve(ek);
    Vector ad = A * delta;

    struct Breakpoint {
      double step;
      double weight;
      Eigen::Index row;
    };
    std::vector<Breakpoint> bps;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (in_zero[static_cast<std::size_t>(i)] || ad[i] == 0.0) continue;
      const double s = -r[i] / ad[i];
      if (s > 0.0) bps.push_back({s, 2.0 * std::abs(ad[i]), i});
    }
    std::sort(bps.begin(), bps.end(), [](const auto& a, const auto& b) { return a.step < b.step; });
    double slope = 1.0 - worst;
    Eigen::Index entering = -1;
    for (const auto& bp : bps) {
      slope += bp.weight;
      if (slope >= 0.0) {
        entering = bp.row;
        break;
      }
    }
    if (entering < 0) break;  // unbounded direction; cannot happen for a bounded LP
    zero_rows[static_cast<std::size_t>(k)] = entering;
  }
  if (!x.allFinite()) return false;
  const double f = prob.value(x);
  if (certified || f < best.f_star) {
    best.f_star = f;
    best.x_star = x;
  }
  return certified;
}

void refine_by_runs(const Objective& problem, std::size_t budget, ReferenceOptimum& best) {
  auto ptr = std::shared_ptr<const Objective>(&problem, [](const Objective*) {});
  const Vector x0 = best.x_star;
  const double D = 2.0 * std::max(1.0, x0.norm());
  for (auto method : {Method::AcceleGrad, Method::AdaGrad}) {
    Oracle oracle(ptr);
    auto consider = [&](const Vector& x) {
      const double f = problem.value(x);
      if (f < best.f_star) {
        best.f_star = f;
        best.x_star = x;
      }
    };
    if (method == Method::AcceleGrad) {
      AccelSchedule sched{D, 0.0, false, true};
      auto s = AcceleGradState::start(x0, sched);
      for (std::size_t t = 0; t < budget; ++t) {
        accelegrad_step(s, sched, oracle);
        consider(s.y);
      }
      consider(accelegrad_output(s));
    } else {
      AdaGradSchedule sched{D, true};
      auto s = AdaGradState::start(x0, sched);
      for (std::size_t t = 0; t < budget; ++t) {
        adagrad_step(s, sched, oracle);
        consider(s.x);
      }
      consider(adagrad_output(s));
    }
  }
}

}  // namespace

ReferenceOptimum reference_optimum(const Objective& problem, std::size_t budget) {
  if (budget < 1) throw UsageError("reference_optimum: budget must be >= 1");
  const auto* reg = dynamic_cast<const RegressionProblem*>(&problem);

  if (reg && reg->p() == 2) {
    auto cg = solve_least_squares_cg(reg->data().A, reg->data().b, budget);
    return {reg->value(cg.x), cg.x, cg.converged, "cg"};
  }

  ReferenceOptimum best;
  best.exact = false;
  best.method = "runs";
  if (reg) {
    // Warm start from the least-squares fit.
    auto cg = solve_least_squares_cg(reg->data().A, reg->data().b,
                                      std::max<std::size_t>(budget, 1000));
    best.x_star = cg.x;
  } else {
    best.x_star = Vector::Zero(static_cast<Eigen::Index>(problem.dim()));
  }
  best.f_star = problem.value(best.x_star);
  if (reg && refine_lad(*reg, best)) {
    best.exact = true;
    best.method = "lad-vertex";
    return best;
  }
  refine_by_runs(problem, budget, best);
  return best;
}

}  // namespace acgd
