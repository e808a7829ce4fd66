#include "acgd/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "acgd/analysis.hpp"
#include "acgd/csv.hpp"
#include "acgd/harness.hpp"

namespace acgd {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    note(why);
  }
  void note(const std::string& s) {
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

std::string num(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Instance {
  std::shared_ptr<RegressionProblem> problem;
  ReferenceOptimum ref;
  Vector x0;

  double diameter(double rho) const { return 2.0 * rho * (x0 - ref.x_star).norm(); }
};

Instance make_instance(std::size_t n, std::size_t d, double sigma2, int p, std::uint64_t seed) {
  Instance inst;
  inst.problem = std::make_shared<RegressionProblem>(generate_regression(n, d, sigma2, p, seed));
  inst.ref = reference_optimum(*inst.problem, 20000);
  inst.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
  return inst;
}

Instance smooth_instance(std::uint64_t seed = 1) { return make_instance(200, 50, 0.0, 2, seed); }
Instance nonsmooth_instance() { return make_instance(200, 50, 1e-2, 1, 1); }

RunResult run_on(const Instance& inst, Method method, std::size_t T, bool skip_projection,
                 double rho = 1.0) {
  OptimizerConfig cfg;
  cfg.method = method;
  cfg.diameter = inst.diameter(rho);
  cfg.skip_projection = skip_projection;
  Oracle oracle(inst.problem);
  return run(cfg, oracle, inst.x0, T);
}

void check_band(Outcome& out, const char* label, const RateFit& fit, double lo, double hi) {
  std::string s = std::string(label) + " slope " + num(fit.slope) + " (r2 " + num(fit.r2, 3) +
                  ", " + std::to_string(fit.points) + " pts)";
  if (fit.slope < lo || fit.slope > hi) {
    out.fail(s + " outside [" + num(lo) + ", " + num(hi) + "]");
  } else {
    out.note(s);
  }
}

void check_runtime(Outcome& out, double seconds, double limit) {
  if (seconds >= limit) out.fail("runtime " + num(seconds) + " s >= " + num(limit) + " s");
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Suboptimality of f_last at t = 1, 10, 100, ... must not grow by more than
// 5% between checkpoints; values under the noise floor count as the floor.
void check_last_iterate_trend(Outcome& out, const Trace& trace, double f_star) {
  double prev = -1.0;
  std::size_t prev_t = 0;
  std::size_t checkpoints = 0;
  for (std::size_t t = 1; t <= trace.records.back().iter; t *= 10) {
    auto it = std::find_if(trace.records.begin(), trace.records.end(),
                           [t](const TraceRecord& r) { return r.iter == t; });
    if (it == trace.records.end()) continue;
    const double s = std::max(it->f_last - f_star, kNoiseFloor);
    if (prev > 0.0 && s > 1.05 * prev) {
      out.fail("f_last rises from " + num(prev) + " at t=" + std::to_string(prev_t) + " to " +
               num(s) + " at t=" + std::to_string(t));
      return;
    }
    prev = s;
    prev_t = t;
    ++checkpoints;
  }
  if (checkpoints < 2) {
    out.fail("only " + std::to_string(checkpoints) + " decade checkpoints recorded");
    return;
  }
  out.note("f_last trend holds over " + std::to_string(checkpoints) + " decade checkpoints");
}

// ---------------------------------------------------------------------------

Outcome smooth_acceleration(bool skip_projection) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto inst = smooth_instance();
  const auto res = run_on(inst, Method::AcceleGrad, 10000, skip_projection);
  check_band(out, "AcceleGrad avg", fit_rate_slope(res.trace, inst.ref.f_star, 1e2, 1e4), -1e300,
             -1.8);
  check_last_iterate_trend(out, res.trace, inst.ref.f_star);
  check_runtime(out, elapsed(start), 30.0);
  return out;
}

Outcome nonsmooth_rate(bool skip_projection) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto inst = nonsmooth_instance();
  if (!inst.ref.exact) out.note("F* is an estimate");
  const auto res = run_on(inst, Method::AcceleGrad, 100000, skip_projection);
  check_band(out, "AcceleGrad avg", fit_rate_slope(res.trace, inst.ref.f_star, 1e2, 1e5), -0.8,
             -0.35);
  check_runtime(out, elapsed(start), 60.0);
  return out;
}

Outcome adagrad_baseline() {
  Outcome out;
  const auto ns = nonsmooth_instance();
  const auto r1 = run_on(ns, Method::AdaGrad, 100000, false);
  check_band(out, "AdaGrad p=1 avg", fit_rate_slope(r1.trace, ns.ref.f_star, 1e2, 1e5), -0.8,
             -0.35);
  const auto sm = smooth_instance();
  const auto r2 = run_on(sm, Method::AdaGrad, 10000, false);
  check_band(out, "AdaGrad p=2 avg", fit_rate_slope(r2.trace, sm.ref.f_star, 1e2, 1e4), -1.4,
             -0.6);
  return out;
}

Outcome deterministic_ordering() {
  Outcome out;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto inst = smooth_instance(seed);
    // Exact gradients cost n evaluations each: 10^4 evals is 10^4 / n iterations.
    const std::size_t T = 10000 / inst.problem->num_terms();
    const auto acc = run_on(inst, Method::AcceleGrad, T, false);
    const auto ada = run_on(inst, Method::AdaGrad, T, false);
    const auto& a = acc.trace.records.back();
    const auto& g = ada.trace.records.back();
    const double acc_sub = std::min(a.f_avg, a.f_last) - inst.ref.f_star;
    const double ada_sub = g.f_avg - inst.ref.f_star;
    std::string s = "seed " + std::to_string(seed) + " @" + std::to_string(a.evals) +
                    " evals: AcceleGrad " + num(acc_sub) + " vs AdaGrad " + num(ada_sub);
    if (a.evals != g.evals || !(acc_sub < ada_sub)) {
      out.fail(s);
    } else {
      out.note(s);
    }
  }
  return out;
}

Outcome stochastic_robustness() {
  Outcome out;
  const auto inst = make_instance(500, 50, 1e-2, 1, 5);
  const std::size_t n = inst.problem->num_terms();
  constexpr std::size_t kEpochs = 25;
  constexpr std::uint64_t kSeeds = 5;
  std::vector<double> mean(kEpochs + 1, 0.0);
  const AccelSchedule sched{inst.diameter(1.0)};
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    Oracle oracle(inst.problem, MinibatchOracle{1, seed});
    auto state = AcceleGradState::start(inst.x0, sched);
    for (std::size_t e = 1; e <= kEpochs; ++e) {
      for (std::size_t i = 0; i < n; ++i) accelegrad_step(state, sched, oracle);
      mean[e] += (inst.problem->value(accelegrad_output(state)) - inst.ref.f_star) /
                 static_cast<double>(kSeeds);
    }
  }
  const double ratio = mean[1] / mean[kEpochs];
  std::string s = "epoch 1 " + num(mean[1]) + " -> epoch 25 " + num(mean[kEpochs]) + " (x" +
                  num(ratio, 3) + ")";
  if (!(ratio >= 2.0)) {
    out.fail(s + ", decrease below 2x");
  } else {
    out.note(s);
  }
  for (std::size_t e = 2; e <= kEpochs; ++e) {
    if (mean[e] > 3.0 * mean[1]) {
      out.fail("epoch " + std::to_string(e) + " exceeds 3x epoch-1 value");
      break;
    }
  }
  return out;
}

Outcome projection_free() {
  Outcome out;
  auto smooth = smooth_acceleration(true);
  auto nonsmooth = nonsmooth_rate(true);
  out.ok = smooth.ok && nonsmooth.ok;
  out.detail = "smooth: " + smooth.detail + " | non-smooth: " + nonsmooth.detail;
  return out;
}

std::vector<double> random_nonnegative(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 100);
  std::uniform_real_distribution<double> expo(-20.0, 20.0);
  std::bernoulli_distribution zero(0.2);
  std::vector<double> a(static_cast<std::size_t>(len(rng)));
  for (auto& v : a) v = zero(rng) ? 0.0 : std::exp(expo(rng));
  return a;
}

Outcome sequence_inequalities(const std::function<double(std::size_t)>& weight) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  constexpr int kTrials = 1000;
  std::mt19937_64 rng(20180701);

  int bad = 0;
  for (int k = 0; k < kTrials; ++k) {
    auto a = random_nonnegative(rng);
    if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) a.back() = 1.0;
    const auto s = sqrt_sum_sandwich(a);
    if (!holds_with_slack(s.lhs, s.mid) || !holds_with_slack(s.mid, s.rhs)) ++bad;
  }
  if (bad) out.fail("sqrt-sum sandwich violated in " + std::to_string(bad) + " trials");
  else out.note("sqrt-sum sandwich 1000/1000");

  bad = 0;
  for (int k = 0; k < kTrials; ++k) {
    const auto a = random_nonnegative(rng);
    const auto s = log_sum_bound(a);
    if (!holds_with_slack(s.lhs, s.rhs)) ++bad;
  }
  if (bad) out.fail("log-sum bound violated in " + std::to_string(bad) + " trials");
  else out.note("log-sum bound 1000/1000");

  // Smooth gradient bound on random least-squares instances, 20 x 50 points.
  bad = 0;
  std::uniform_int_distribution<std::size_t> rows(5, 40), cols(2, 15);
  std::normal_distribution<double> normal(0.0, 3.0);
  const double noise[] = {0.0, 0.1, 1.0};
  for (int inst = 0; inst < 20; ++inst) {
    const auto n = rows(rng);
    const auto d = cols(rng);
    auto prob = generate_regression(n, d, noise[inst % 3], 2, 1000 + static_cast<unsigned>(inst));
    const double beta = 2.0 * max_eigenvalue_gram(prob.data().A);
    const auto cg = solve_least_squares_cg(prob.data().A, prob.data().b, 1000);
    const double f_star = prob.value(cg.x);
    for (int k = 0; k < kTrials / 20; ++k) {
      Vector x(static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
      const auto s = smooth_grad_bound_check(prob, x, f_star, beta);
      if (!holds_with_slack(s.lhs, s.rhs, 1e-9)) ++bad;
    }
  }
  if (bad) out.fail("smooth gradient bound violated in " + std::to_string(bad) + " trials");
  else out.note("smooth gradient bound 1000/1000");

  const auto weights = check_weight_properties(1000000, weight ? weight : alpha);
  if (!weights.empty()) out.fail("weights: " + weights);
  else out.note("weight properties hold for t, T <= 1e6");

  check_runtime(out, elapsed(start), 10.0);
  return out;
}

Outcome oracle_unbiasedness_and_replay() {
  Outcome out;
  auto prob = std::make_shared<RegressionProblem>(generate_regression(10, 3, 0.1, 2, 8));
  Vector x(3);
  x << 0.5, -1.0, 2.0;
  const Vector exact = prob->value_and_subgradient(x).grad;

  constexpr int kSamples = 100000;
  Oracle oracle(prob, MinibatchOracle{1, 42});
  Vector sum = Vector::Zero(3), sum_sq = Vector::Zero(3);
  for (int k = 0; k < kSamples; ++k) {
    const Vector g = oracle.query(x).subgradient;
    sum += g;
    sum_sq += g.cwiseProduct(g);
  }
  const double N = kSamples;
  for (Eigen::Index i = 0; i < 3; ++i) {
    const double mean = sum[i] / N;
    const double var = (sum_sq[i] - N * mean * mean) / (N - 1.0);
    const double se = std::sqrt(var / N);
    const double z = std::abs(mean - exact[i]) / se;
    if (!(z <= 3.0)) out.fail("coordinate " + std::to_string(i) + " off by " + num(z) + " SE");
    else out.note("coord " + std::to_string(i) + ": " + num(z, 3) + " SE");
  }

  RunConfig cfg;
  cfg.problem.n = 100;
  cfg.problem.d = 10;
  cfg.problem.p = 1;
  cfg.problem.seed = 77;
  cfg.method = Method::AcceleGrad;
  cfg.rho = 1.0;
  cfg.oracle.kind = "minibatch";
  cfg.oracle.batch = 5;
  cfg.T = 3000;
  std::string csv[2];
  for (auto& text : csv) {
    std::ostringstream os;
    write_trace_csv(os, execute(cfg).trace);
    text = os.str();
  }
  if (csv[0] != csv[1] || csv[0].empty()) out.fail("replayed trace CSVs differ");
  else out.note("replayed CSVs byte-identical (" + std::to_string(csv[0].size()) + " bytes)");
  return out;
}

// Relative error of the analytic gradient against central differences.
double fd_relative_error(const Objective& f, const Vector& x, double h) {
  const Vector g = f.value_and_subgradient(x).grad;
  Vector fd(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    fd[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return (fd - g).norm() / std::max(g.norm(), 1e-300);
}

Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(0.5), positive(0.5);
  Dataset ds;
  ds.dim = d;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SparseVector::Entry> e;
    for (std::size_t j = 0; j < d; ++j) {
      if (keep(rng)) e.push_back({j, normal(rng)});
    }
    ds.rows.emplace_back(d, e);
    ds.labels.push_back(positive(rng) ? 1.0 : -1.0);
  }
  return ds;
}

Outcome gradient_agreement() {
  Outcome out;
  std::mt19937_64 rng(909);
  std::normal_distribution<double> normal;
  auto random_point = [&](std::size_t d) {
    Vector x(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = normal(rng);
    return x;
  };
  constexpr double kH = 1e-5;
  constexpr int kPoints = 20;

  auto report = [&](const char* label, double worst) {
    std::string s = std::string(label) + " max rel err " + num(worst, 3);
    if (!(worst < 1e-6)) out.fail(s);
    else out.note(s);
  };

  // Smooth objectives: any point.
  {
    auto reg = generate_regression(5, 3, 0.1, 2, 91);
    double worst = 0.0;
    for (int k = 0; k < kPoints; ++k) worst = std::max(worst, fd_relative_error(reg, random_point(3), kH));
    report("p=2", worst);
  }
  auto ds = std::make_shared<const Dataset>(random_dataset(30, 8, 92));
  {
    ClassificationProblem logistic(ds, Loss::Logistic, 0.1);
    double worst = 0.0;
    for (int k = 0; k < kPoints; ++k) worst = std::max(worst, fd_relative_error(logistic, random_point(8), kH));
    report("logistic", worst);
  }
  // Piecewise-linear objectives: only points where no kink lies within h.
  {
    auto reg = generate_regression(5, 3, 0.1, 1, 93);
    const auto& A = reg.data().A;
    double worst = 0.0;
    for (int k = 0; k < kPoints;) {
      Vector x = random_point(3);
      Vector r = A * x - reg.data().b;
      const double reach = 10.0 * kH * A.cwiseAbs().rowwise().sum().maxCoeff();
      if (r.cwiseAbs().minCoeff() <= reach) continue;
      worst = std::max(worst, fd_relative_error(reg, x, kH));
      ++k;
    }
    report("p=1", worst);
  }
  {
    ClassificationProblem hinge(ds, Loss::Hinge, 0.0);
    double worst = 0.0;
    for (int k = 0; k < kPoints;) {
      Vector x = random_point(8);
      bool near_kink = false;
      for (std::size_t i = 0; i < ds->size(); ++i) {
        const double margin = ds->labels[i] * dot(ds->rows[i], x);
        double reach = 0.0;
        for (double v : ds->rows[i].values()) reach += std::abs(v);
        if (std::abs(1.0 - margin) <= 10.0 * kH * reach) near_kink = true;
      }
      if (near_kink) continue;
      worst = std::max(worst, fd_relative_error(hinge, x, kH));
      ++k;
    }
    report("hinge", worst);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants that are cheap to check alongside the criteria.

Outcome invariant_projection() {
  Outcome out;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal(0.0, 4.0);
  std::uniform_real_distribution<double> rad(0.1, 5.0);
  int bad_idem = 0, bad_nonexp = 0, bad_inside = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index d = 1 + k % 7;
    Vector c(d), x(d), y(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      c[i] = normal(rng);
      x[i] = normal(rng);
      y[i] = normal(rng);
    }
    Ball K(c, rad(rng));
    const Vector px = project_ball(x, K);
    const Vector py = project_ball(y, K);
    if ((project_ball(px, K) - px).norm() > 1e-12 * (1.0 + px.norm())) ++bad_idem;
    if ((px - py).norm() > (x - y).norm() * (1.0 + 1e-12)) ++bad_nonexp;
    if (!K.contains(px)) ++bad_inside;
  }
  if (bad_idem + bad_nonexp + bad_inside) {
    out.fail("idempotence " + std::to_string(bad_idem) + ", nonexpansive " +
             std::to_string(bad_nonexp) + ", containment " + std::to_string(bad_inside));
  } else {
    out.note("1000 random projections idempotent, nonexpansive, inside K");
  }
  return out;
}

Outcome invariant_accelegrad_steps() {
  Outcome out;
  auto prob = std::make_shared<RegressionProblem>(generate_regression(60, 8, 1e-2, 1, 11));
  for (bool project_y : {false, true}) {
    AccelSchedule sched{3.0, 0.0, project_y, false};
    Oracle oracle(prob);
    auto s = AcceleGradState::start(Vector::Zero(8), sched);
    double prev_eta = INFINITY;
    for (std::size_t t = 0; t < 2000; ++t) {
      const Vector z = s.z, y = s.y;
      const auto info = accelegrad_step(s, sched, oracle);
      const double tau = 1.0 / alpha(t);
      const Vector expect = tau * z + (1.0 - tau) * y;
      const double scale = 1.0 + z.norm() + y.norm();
      if ((s.x - expect).norm() > 1e-12 * scale) {
        out.fail("coupling identity off at t=" + std::to_string(t));
        break;
      }
      if (t <= 2 && s.x != z) {
        out.fail("x != z at t=" + std::to_string(t));
        break;
      }
      if (!info.eta || *info.eta > prev_eta) {
        out.fail("eta increased at t=" + std::to_string(t));
        break;
      }
      prev_eta = *info.eta;
      if (!s.K.contains(s.z) || (project_y && !s.K.contains(s.y))) {
        out.fail("iterate left K at t=" + std::to_string(t));
        break;
      }
      if (!project_y) {
        const double lhs = (s.y - s.x).norm();
        const double rhs = *info.eta * info.grad_norm;
        if (std::abs(lhs - rhs) > 1e-12 * (1.0 + rhs)) {
          out.fail("||y - x|| != eta ||g|| at t=" + std::to_string(t));
          break;
        }
      }
    }
  }
  if (out.ok) out.note("coupling, eta monotonicity, containment over 2x2000 steps");
  return out;
}

Outcome invariant_objectives() {
  Outcome out;
  std::mt19937_64 rng(55);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto ds = std::make_shared<const Dataset>(random_dataset(25, 6, 56));
  std::vector<std::shared_ptr<const FiniteSumObjective>> objs{
      std::make_shared<RegressionProblem>(generate_regression(25, 6, 0.1, 1, 57)),
      std::make_shared<RegressionProblem>(generate_regression(25, 6, 0.1, 2, 58)),
      std::make_shared<ClassificationProblem>(ds, Loss::Logistic, 0.05),
      std::make_shared<ClassificationProblem>(ds, Loss::Hinge, 0.0)};
  int bad_convex = 0, bad_full = 0;
  for (const auto& f : objs) {
    for (int k = 0; k < 100; ++k) {
      Vector x(6), y(6);
      for (Eigen::Index i = 0; i < 6; ++i) {
        x[i] = 3.0 * normal(rng);
        y[i] = 3.0 * normal(rng);
      }
      const double lam = unit(rng);
      const double mix = f->value(lam * x + (1.0 - lam) * y);
      if (mix > lam * f->value(x) + (1.0 - lam) * f->value(y) + 1e-9) ++bad_convex;
      std::vector<std::size_t> all(f->num_terms());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      const auto a = f->value_and_subgradient(x, all);
      const auto b = f->value_and_subgradient(x);
      if (a.value != b.value || a.grad != b.grad || b.value != f->value(x)) ++bad_full;
    }
  }
  if (bad_convex || bad_full) {
    out.fail("convexity " + std::to_string(bad_convex) + ", full-subset mismatch " +
             std::to_string(bad_full));
  } else {
    out.note("convexity and full-subset identity on 4 objectives x 100 points");
  }
  return out;
}

struct Entry {
  const char* id;
  const char* group;
  const char* title;
  std::function<Outcome(const AcceptanceOptions&)> fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"1", "smooth", "smooth acceleration (AcceleGrad slope <= -1.8)",
       [](const auto&) { return smooth_acceleration(false); }},
      {"2", "nonsmooth", "non-smooth rate (AcceleGrad slope in [-0.8, -0.35])",
       [](const auto&) { return nonsmooth_rate(false); }},
      {"3", "adagrad", "AdaGrad baseline slopes", [](const auto&) { return adagrad_baseline(); }},
      {"4", "ordering", "deterministic ordering at 1e4 evals",
       [](const auto&) { return deterministic_ordering(); }},
      {"5", "stochastic", "minibatch-1 robustness over 25 epochs",
       [](const auto&) { return stochastic_robustness(); }},
      {"6", "projection-free", "criteria 1 and 2 without projection",
       [](const auto&) { return projection_free(); }},
      {"7", "lemmas", "lemma oracles and weight properties",
       [](const AcceptanceOptions& o) { return sequence_inequalities(o.weight); }},
      {"8", "oracles", "minibatch unbiasedness and replay",
       [](const auto&) { return oracle_unbiasedness_and_replay(); }},
      {"9", "gradients", "finite-difference gradient agreement",
       [](const auto&) { return gradient_agreement(); }},
      {"inv-projection", "invariants", "ball projection properties",
       [](const auto&) { return invariant_projection(); }},
      {"inv-accelegrad", "invariants", "AcceleGrad step invariants",
       [](const auto&) { return invariant_accelegrad_steps(); }},
      {"inv-objectives", "invariants", "objective convexity and subset identity",
       [](const auto&) { return invariant_objectives(); }},
  };
  return entries;
}

bool selected(const Entry& e, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  static const std::set<std::string> rates{"1", "2", "3", "4", "6"};
  const bool is_criterion = std::string(e.id).rfind("inv-", 0) != 0;
  for (const auto& s : only) {
    if (s == e.id || s == e.group) return true;
    if (s == "rates" && rates.count(e.id)) return true;
    if (s == "criteria" && is_criterion) return true;
    if (s == "all") return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> acceptance_selectors() {
  std::vector<std::string> out{"all", "criteria", "rates"};
  std::set<std::string> groups;
  for (const auto& e : registry()) {
    out.emplace_back(e.id);
    if (groups.insert(e.group).second) out.emplace_back(e.group);
  }
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const auto known = acceptance_selectors();
  for (const auto& s : options.only) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw UsageError("unknown selector '" + s + "'");
    }
  }
  std::vector<CriterionResult> results;
  for (const auto& e : registry()) {
    if (!selected(e, options.only)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r{e.id, e.group, e.title, false, {}, 0.0};
    try {
      auto outcome = e.fn(options);
      r.passed = outcome.ok;
      r.detail = std::move(outcome.detail);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = elapsed(start);
    if (options.on_result) options.on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.group << ": " << r.title
     << " (" << num(r.seconds, 3) << " s) " << r.detail;
  return os.str();
}

}  // namespace acgd
