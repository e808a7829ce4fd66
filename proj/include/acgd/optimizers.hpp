#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "acgd/linalg.hpp"
#include "acgd/oracle.hpp"

namespace acgd {

// ---------------------------------------------------------------------------
// AcceleGrad: linear coupling of a projected "mirror" sequence z and a
// gradient-step sequence y, with an AdaGrad-like step size that folds in
// growing importance weights.

/// Importance weight: 1 for t <= 2, (t + 1) / 4 afterwards.
double alpha(std::size_t t);

struct AccelSchedule {
  double diameter = 1.0;  ///< D; the ball K has radius D / 2.
  double lipschitz = 0.0; ///< G. Zero drops the G^2 term from the step size.
  bool project_y = false; ///< Also project y onto K (constrained variant).
  bool skip_projection = false;

  void validate() const;
};

struct AcceleGradState {
  std::size_t t = 0;
  Vector x, y, z;
  double S = 0.0;  ///< G^2 + sum_{tau <= t} alpha_tau^2 ||g_tau||^2
  double W = 0.0;  ///< sum of weights folded into the output so far
  Vector ybar_acc; ///< sum alpha_tau y_{tau + 1}, unnormalized
  Ball K;
  double last_eta = 0.0;

  /// y_0 = z_0 = x_0. K defaults to the ball of diameter D centered at x_0.
  static AcceleGradState start(const Vector& x0, const AccelSchedule& schedule,
                               std::optional<Vector> center = std::nullopt);
};

/// 2D / sqrt(S), or nullopt when S == 0 (only possible with G = 0 and all
/// gradients so far zero). S must already include the current step's term.
std::optional<double> eta(const AcceleGradState& state, const AccelSchedule& schedule);

struct StepInfo {
  std::size_t evals = 0;
  std::optional<double> eta;  ///< nullopt on a zero-denominator (no-move) step
  double grad_norm = 0.0;
};

StepInfo accelegrad_step(AcceleGradState& state, const AccelSchedule& schedule, Oracle& oracle);

/// Weighted average sum alpha_t y_{t+1} / sum alpha_t. Throws before any step.
Vector accelegrad_output(const AcceleGradState& state);

// ---------------------------------------------------------------------------
// AdaGrad with a single global step size D / sqrt(2 sum ||g||^2).

struct AdaGradSchedule {
  double diameter = 1.0;
  bool skip_projection = false;

  void validate() const;
};

struct AdaGradState {
  std::size_t t = 1;  ///< index of the next point to query
  Vector x;
  double Q = 0.0;     ///< sum_{tau < t} ||g_tau||^2
  Vector xbar_acc;    ///< sum of queried points x_1 .. x_{t-1}
  Ball K;
  double last_eta = 0.0;

  std::size_t steps() const noexcept { return t - 1; }

  static AdaGradState start(const Vector& x1, const AdaGradSchedule& schedule,
                            std::optional<Vector> center = std::nullopt);
};

StepInfo adagrad_step(AdaGradState& state, const AdaGradSchedule& schedule, Oracle& oracle);

/// Uniform average of the queried points. Throws before any step.
Vector adagrad_output(const AdaGradState& state);

// ---------------------------------------------------------------------------
// Driving loop.

enum class Method { AcceleGrad, AdaGrad };

struct OptimizerConfig {
  Method method = Method::AcceleGrad;
  double diameter = 1.0;
  double lipschitz = 0.0;       ///< AcceleGrad only
  bool project_y = false;       ///< AcceleGrad only
  bool skip_projection = false;
  std::optional<Vector> center; ///< defaults to x0
};

struct TraceRecord {
  std::size_t iter = 0;   ///< iterations completed
  std::size_t evals = 0;  ///< cumulative atomic gradient evaluations
  double f_avg = 0.0;     ///< objective at the averaged output
  double f_last = 0.0;    ///< objective at the newest iterate (y for AcceleGrad, x for AdaGrad)
  double eta = 0.0;       ///< latest step size, 0 after a no-move step
  double S = 0.0;         ///< AcceleGrad's S, or AdaGrad's sum ||g||^2
};

struct Trace {
  std::vector<TraceRecord> records;
};

/// Which iterations get a trace record. `every == 0` picks the default: every
/// iteration for T <= 1000, otherwise about `log_points` log-spaced points.
/// The final iteration is always recorded.
struct RecordCadence {
  std::size_t every = 0;
  std::size_t log_points = 200;
};

/// Ascending iteration numbers in [1, T] to record. With `every = k` these
/// are 1, 1 + k, 1 + 2k, ... plus T.
std::vector<std::size_t> record_points(std::size_t T, const RecordCadence& cadence);

using TraceSink = std::function<void(const TraceRecord&)>;

struct RunResult {
  Trace trace;
  Vector output;  ///< averaged output after T steps
  Vector last;    ///< newest iterate after T steps
};

/// Runs T iterations (t = 0 .. T-1) from x0. The objective used for trace
/// values is `oracle.objective()` (full, noise-free).
RunResult run(const OptimizerConfig& config, Oracle& oracle, const Vector& x0, std::size_t T,
              const RecordCadence& cadence = {}, const TraceSink& sink = {});

}  // namespace acgd
