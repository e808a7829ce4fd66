#include <algorithm>
#include <cmath>
#include <variant>

#include "acgd/optimizers.hpp"

namespace acgd {

std::vector<std::size_t> record_points(std::size_t T, const RecordCadence& cadence) {
  if (T < 1) throw UsageError("T must be >= 1");
  std::vector<std::size_t> pts;
  if (cadence.every > 0) {
    for (std::size_t it = 1; it <= T; it += cadence.every) pts.push_back(it);
  } else if (T <= 1000 || cadence.log_points < 2) {
    pts.resize(T);
    for (std::size_t i = 0; i < T; ++i) pts[i] = i + 1;
  } else {
    const double span = std::log(static_cast<double>(T));
    const auto m = cadence.log_points;
    for (std::size_t k = 0; k < m; ++k) {
      const double e = span * static_cast<double>(k) / static_cast<double>(m - 1);
      auto it = static_cast<std::size_t>(std::llround(std::exp(e)));
      it = std::clamp<std::size_t>(it, 1, T);
      if (pts.empty() || it > pts.back()) pts.push_back(it);
    }
    // Powers of ten are always recorded so decade checkpoints line up across runs.
    for (std::size_t p = 10; p <= T; p *= 10) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  if (pts.back() != T) pts.push_back(T);
  return pts;
}

namespace {

template <class State, class Step, class Output, class Last>
RunResult drive(State& state, Step step, Output output, Last last, double State::*accum,
                Oracle& oracle, std::size_t T, const RecordCadence& cadence,
                const TraceSink& sink) {
  const auto points = record_points(T, cadence);
  const Objective& f = oracle.objective();
  RunResult res;
  res.trace.records.reserve(points.size());
  std::size_t evals = 0;
  std::size_t next = 0;
  for (std::size_t it = 1; it <= T; ++it) {
    evals += step(state).evals;
    if (next < points.size() && points[next] == it) {
      ++next;
      TraceRecord rec{it, evals, f.value(output(state)), f.value(last(state)), state.last_eta,
                      state.*accum};
      if (sink) sink(rec);
      res.trace.records.push_back(rec);
    }
  }
  res.output = output(state);
  res.last = last(state);
  return res;
}

}  // namespace

RunResult run(const OptimizerConfig& config, Oracle& oracle, const Vector& x0, std::size_t T,
              const RecordCadence& cadence, const TraceSink& sink) {
  if (T < 1) throw UsageError("T must be >= 1");
  require_same_dim(static_cast<std::size_t>(x0.size()), oracle.dim(), "run");
  if (config.method == Method::AcceleGrad) {
    AccelSchedule sched{config.diameter, config.lipschitz, config.project_y,
                        config.skip_projection};
    auto state = AcceleGradState::start(x0, sched, config.center);
    return drive(
        state, [&](AcceleGradState& s) { return accelegrad_step(s, sched, oracle); },
        [](const AcceleGradState& s) { return accelegrad_output(s); },
        [](const AcceleGradState& s) -> const Vector& { return s.y; }, &AcceleGradState::S,
        oracle, T, cadence, sink);
  }
  if (config.project_y) throw UsageError("project_y applies to AcceleGrad only");
  AdaGradSchedule sched{config.diameter, config.skip_projection};
  auto state = AdaGradState::start(x0, sched, config.center);
  return drive(
      state, [&](AdaGradState& s) { return adagrad_step(s, sched, oracle); },
      [](const AdaGradState& s) { return adagrad_output(s); },
      [](const AdaGradState& s) -> const Vector& { return s.x; }, &AdaGradState::Q, oracle, T,
      cadence, sink);
}

}  // namespace acgd
