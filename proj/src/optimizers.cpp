#include "acgd/optimizers.hpp"

#include <cmath>
#include <string>

namespace acgd {

double alpha(std::size_t t) { return t <= 2 ? 1.0 : static_cast<double>(t + 1) / 4.0; }

void AccelSchedule::validate() const {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) throw UsageError("D must be positive");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) throw UsageError("G must be >= 0");
  if (project_y && skip_projection) {
    throw UsageError("project_y and skip_projection are mutually exclusive");
  }
}

void AdaGradSchedule::validate() const {
  if (!(diameter > 0.0) || !std::isfinite(diameter)) throw UsageError("D must be positive");
}

namespace {

Ball make_ball(const Vector& x0, double diameter, std::optional<Vector> center) {
  if (!all_finite(x0)) throw UsageError("initial point is not finite");
  Vector c = center ? std::move(*center) : x0;
  require_same_dim(static_cast<std::size_t>(c.size()), static_cast<std::size_t>(x0.size()),
                   "ball center");
  return Ball(std::move(c), diameter / 2.0);
}

}  // namespace

AcceleGradState AcceleGradState::start(const Vector& x0, const AccelSchedule& schedule,
                                       std::optional<Vector> center) {
  schedule.validate();
  Ball K = make_ball(x0, schedule.diameter, std::move(center));
  return AcceleGradState{0,
                         x0,
                         x0,
                         x0,
                         schedule.lipschitz * schedule.lipschitz,
                         0.0,
                         Vector::Zero(x0.size()),
                         std::move(K),
                         0.0};
}

std::optional<double> eta(const AcceleGradState& state, const AccelSchedule& schedule) {
  if (state.S <= 0.0) return std::nullopt;
  return 2.0 * schedule.diameter / std::sqrt(state.S);
}

StepInfo accelegrad_step(AcceleGradState& s, const AccelSchedule& schedule, Oracle& oracle) {
  const double a = alpha(s.t);
  const double tau = 1.0 / a;

  // Query point couples the two sequences; for t <= 2, tau = 1 and x = z.
  Vector x_next = tau == 1.0 ? s.z : Vector(tau * s.z + (1.0 - tau) * s.y);
  OracleAnswer ans = oracle.query(x_next);
  const Vector& g = ans.subgradient;
  const double gnorm2 = g.squaredNorm();
  s.S += a * a * gnorm2;

  StepInfo info{ans.evals, eta(s, schedule), std::sqrt(gnorm2)};
  if (info.eta) {
    const double step = *info.eta;
    Vector z_next = s.z - (a * step) * g;
    s.z = schedule.skip_projection ? std::move(z_next) : project_ball(z_next, s.K);
    Vector y_next = x_next - step * g;
    s.y = schedule.project_y ? project_ball(y_next, s.K) : std::move(y_next);
    s.last_eta = step;
  } else {
    s.last_eta = 0.0;
  }
  s.x = std::move(x_next);
  s.ybar_acc += a * s.y;
  s.W += a;
  ++s.t;
  return info;
}

Vector accelegrad_output(const AcceleGradState& state) {
  if (!(state.W > 0.0)) throw UsageError("accelegrad_output: no steps taken");
  return state.ybar_acc / state.W;
}

AdaGradState AdaGradState::start(const Vector& x1, const AdaGradSchedule& schedule,
                                 std::optional<Vector> center) {
  schedule.validate();
  Ball K = make_ball(x1, schedule.diameter, std::move(center));
  return AdaGradState{1, x1, 0.0, Vector::Zero(x1.size()), std::move(K), 0.0};
}

StepInfo adagrad_step(AdaGradState& s, const AdaGradSchedule& schedule, Oracle& oracle) {
  OracleAnswer ans = oracle.query(s.x);
  const Vector& g = ans.subgradient;
  const double gnorm2 = g.squaredNorm();
  s.xbar_acc += s.x;
  s.Q += gnorm2;

  StepInfo info{ans.evals, std::nullopt, std::sqrt(gnorm2)};
  if (s.Q > 0.0) {
    const double step = schedule.diameter / std::sqrt(2.0 * s.Q);
    info.eta = step;
    Vector moved = s.x - step * g;
    s.x = schedule.skip_projection ? std::move(moved) : project_ball(moved, s.K);
    s.last_eta = step;
  } else {
    s.last_eta = 0.0;
  }
  ++s.t;
  return info;
}

Vector adagrad_output(const AdaGradState& state) {
  if (state.steps() == 0) throw UsageError("adagrad_output: no steps taken");
  return state.xbar_acc / static_cast<double>(state.steps());
}

}  // namespace acgd
