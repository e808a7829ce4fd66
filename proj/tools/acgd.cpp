#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "acgd/acceptance.hpp"
#include "acgd/csv.hpp"
#include "acgd/errors.hpp"
#include "acgd/harness.hpp"

namespace {

enum Exit { kOk = 0, kCriterionFailed = 1, kUsage = 2, kIo = 3 };

// Flags shared by run and compare. Unset D / rho / seed stay unset so the
// config can check "exactly one of" and fall back to ACGD_SEED.
struct Options {
  acgd::RunConfig config;
  std::string method = "accelegrad";
  double diameter = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::string out = "-";
  CLI::Option* diameter_opt = nullptr;
  CLI::Option* rho_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_problem_options(CLI::App* app, Options& o) {
  auto& p = o.config.problem;
  app->add_option("--problem", p.kind, "reg | logistic | hinge")
      ->check(CLI::IsMember({"reg", "logistic", "hinge"}))
      ->capture_default_str();
  app->add_option("--p", p.p, "regression exponent (1 or 2)")->capture_default_str();
  app->add_option("--n", p.n, "number of samples")->capture_default_str();
  app->add_option("--d", p.d, "dimension")->capture_default_str();
  app->add_option("--sigma2", p.sigma2, "label noise variance")->capture_default_str();
  app->add_option("--data", p.data_path, "libsvm file for logistic / hinge");
  app->add_option("--container", p.container_path, "ACGD1 regression container");
  app->add_option("--reg", p.regularization, "l2 regularization for classification")
      ->capture_default_str();
  o.seed_opt = app->add_option("--seed", o.seed, "seed (default: $ACGD_SEED, else 0)");
}

void add_optimizer_options(CLI::App* app, Options& o) {
  auto& c = o.config;
  o.diameter_opt = app->add_option("--D", o.diameter, "diameter of the ball K");
  o.rho_opt = app->add_option("--rho", o.rho, "D = 2 rho ||x0 - x*||");
  app->add_option("--G", c.lipschitz, "initial gradient bound in the step size")
      ->capture_default_str();
  app->add_flag("--project-y", c.project_y, "project the y iterate onto K");
  app->add_flag("--skip-projection", c.skip_projection, "never project");
  app->add_option("--oracle", c.oracle.kind, "exact | minibatch | noise")
      ->check(CLI::IsMember({"exact", "minibatch", "noise"}))
      ->capture_default_str();
  app->add_option("--batch", c.oracle.batch, "minibatch size")->capture_default_str();
  app->add_option("--noise-sigma", c.oracle.noise_sigma, "gradient noise level")
      ->capture_default_str();
  app->add_option("--T", c.T, "iterations")->capture_default_str();
  app->add_option("--every", c.cadence, "record every k iterations (0: default cadence)")
      ->capture_default_str();
  app->add_option("--out", o.out, "output CSV ('-' for stdout)")->capture_default_str();
}

std::uint64_t env_seed() {
  const char* s = std::getenv("ACGD_SEED");
  if (s == nullptr || *s == '\0') return 0;
  std::uint64_t v = 0;
  const char* end = s + std::char_traits<char>::length(s);
  auto [ptr, ec] = std::from_chars(s, end, v);
  if (ec != std::errc() || ptr != end) {
    throw acgd::UsageError(std::string("ACGD_SEED is not an unsigned integer: '") + s + "'");
  }
  return v;
}

acgd::RunConfig finish(Options& o) {
  acgd::RunConfig c = o.config;
  c.method = acgd::parse_method(o.method);
  if (*o.diameter_opt) c.diameter = o.diameter;
  if (*o.rho_opt) c.rho = o.rho;
  c.problem.seed = *o.seed_opt ? o.seed : env_seed();
  c.validate();
  return c;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw acgd::IoError("cannot open '" + path + "' for writing");
  fn(f);
  f.close();
  if (!f) throw acgd::IoError("failed writing '" + path + "'");
}

int cmd_run(Options& o) {
  const auto config = finish(o);
  const auto result = acgd::execute(config);
  with_output(o.out, [&](std::ostream& os) { acgd::write_trace_csv(os, result.trace); });
  return kOk;
}

struct CompareOptions {
  std::vector<std::string> methods;
  std::vector<std::size_t> batches;
  std::vector<std::string> traces;
  unsigned threads = 0;
};

struct Job {
  std::string name;
  acgd::RunConfig config;
};

int cmd_compare(Options& o, const CompareOptions& c) {
  std::vector<acgd::NamedTrace> series;
  for (const auto& spec : c.traces) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw acgd::UsageError("--trace expects name=path, got '" + spec + "'");
    }
    const std::string name = spec.substr(0, eq), path = spec.substr(eq + 1);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw acgd::IoError("cannot open trace '" + path + "'");
    try {
      series.push_back({name, acgd::read_trace_csv(f)});
    } catch (const acgd::ParseError& e) {
      throw acgd::ParseError(path + ": " + e.what());
    }
  }

  std::vector<Job> jobs;
  const std::vector<std::string> methods =
      c.methods.empty() ? (c.batches.empty() ? std::vector<std::string>{"accelegrad", "adagrad"}
                                             : std::vector<std::string>{o.method})
                        : c.methods;
  if (!c.batches.empty()) o.config.oracle.kind = "minibatch";
  for (const auto& m : methods) {
    o.method = m;
    if (c.batches.empty()) {
      jobs.push_back({m, finish(o)});
      continue;
    }
    for (std::size_t b : c.batches) {
      o.config.oracle.batch = b;
      const std::string key = "b=" + std::to_string(b);
      jobs.push_back({methods.size() > 1 ? m + "." + key : key, finish(o)});
    }
  }
  if (jobs.size() + series.size() < 2) {
    throw acgd::UsageError("compare needs at least two series");
  }

  if (!jobs.empty()) {
    // One problem instance and one diameter shared by every run.
    auto problem = acgd::build_problem(jobs.front().config.problem);
    const acgd::Vector x0 = acgd::Vector::Zero(static_cast<Eigen::Index>(problem->dim()));
    const double diameter = acgd::resolve_diameter(jobs.front().config, *problem, x0);
    for (auto& j : jobs) {
      j.config.rho.reset();
      j.config.diameter = diameter;
    }

    std::vector<acgd::NamedTrace> produced(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next == jobs.size()) return;
          i = next++;
        }
        try {
          produced[i] = {jobs[i].name, acgd::execute(jobs[i].config, problem).trace};
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    unsigned n = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    series.insert(series.begin(), produced.begin(), produced.end());
  }

  with_output(o.out, [&](std::ostream& os) { acgd::write_comparison_csv(os, series); });
  return kOk;
}

int cmd_verify(const std::vector<std::string>& only) {
  acgd::AcceptanceOptions options;
  options.only = only;
  options.on_result = [](const acgd::CriterionResult& r) {
    std::cout << acgd::format_result(r) << std::endl;
  };
  const auto results = acgd::run_acceptance(options);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " passed" << std::endl;
  return failed == 0 ? kOk : kCriterionFailed;
}

struct DatagenOptions {
  std::size_t n = 2000;
  std::size_t d = 500;
  double sigma2 = 1e-2;
  std::string format = "acgd1";
  std::string out;
};

// libsvm labels are sign(b_i), with b_i = 0 mapped to -1.
void write_libsvm(std::ostream& os, const acgd::RegressionData& data) {
  for (Eigen::Index i = 0; i < data.A.rows(); ++i) {
    os << (data.b[i] > 0.0 ? "+1" : "-1");
    for (Eigen::Index j = 0; j < data.A.cols(); ++j) {
      const double v = data.A(i, j);
      if (v != 0.0) os << ' ' << (j + 1) << ':' << acgd::format_double(v);
    }
    os << '\n';
  }
}

int cmd_datagen(const DatagenOptions& g, Options& o) {
  const std::uint64_t seed = *o.seed_opt ? o.seed : env_seed();
  if (g.n < 1 || g.d < 1) throw acgd::UsageError("n and d must be >= 1");
  if (!(g.sigma2 >= 0.0)) throw acgd::UsageError("sigma2 must be >= 0");
  const auto data = acgd::generate_regression_data(g.n, g.d, g.sigma2, seed);
  if (g.format == "acgd1") {
    if (g.out == "-") {
      acgd::write_container(std::cout, data);
    } else {
      acgd::save_container(g.out, data);
    }
  } else {
    with_output(g.out, [&](std::ostream& os) { write_libsvm(os, data); });
  }
  return kOk;
}

// Unsectioned keys in a config file belong to the subcommand being run, so
// "T = 100" works as well as "[run]" followed by "T = 100".
class SubcommandConfig : public CLI::ConfigTOML {
 public:
  explicit SubcommandConfig(const CLI::App& app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    const auto subs = app_.get_subcommands();
    if (subs.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents.push_back(subs.front()->get_name());
    }
    return items;
  }

 private:
  const CLI::App& app_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AcceleGrad / AdaGrad experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags win on conflict");
  app.config_formatter(std::make_shared<SubcommandConfig>(app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options opts;
  auto* run = app.add_subcommand("run", "run one optimizer and write its trace as CSV");
  add_problem_options(run, opts);
  run->add_option("--opt", opts.method, "accelegrad | adagrad")
      ->check(CLI::IsMember({"accelegrad", "adagrad"}))
      ->capture_default_str();
  add_optimizer_options(run, opts);

  Options cmp_opts;
  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "run several series and merge them by evals");
  add_problem_options(compare, cmp_opts);
  add_optimizer_options(compare, cmp_opts);
  compare->add_option("--methods", cmp.methods, "optimizers to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"accelegrad", "adagrad"}));
  compare->add_option("--opt", cmp_opts.method, "optimizer for a batch sweep")
      ->check(CLI::IsMember({"accelegrad", "adagrad"}))
      ->capture_default_str();
  compare->add_option("--batches", cmp.batches, "minibatch sizes to sweep")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  compare->add_option("--trace", cmp.traces, "external trace as name=path (repeatable)");
  compare->add_option("--threads", cmp.threads, "parallel runs (0: all cores)");

  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "run the acceptance and invariant suite");
  verify->add_option("--only", only, "criterion ids or groups")->delimiter(',');

  Options gen_opts;
  DatagenOptions gen;
  auto* datagen = app.add_subcommand("datagen", "write a synthetic regression problem");
  datagen->add_option("--n", gen.n, "number of samples")->capture_default_str();
  datagen->add_option("--d", gen.d, "dimension")->capture_default_str();
  datagen->add_option("--sigma2", gen.sigma2, "label noise variance")->capture_default_str();
  gen_opts.seed_opt = datagen->add_option("--seed", gen_opts.seed, "seed (default: $ACGD_SEED)");
  datagen->add_option("--format", gen.format, "acgd1 | libsvm")
      ->check(CLI::IsMember({"acgd1", "libsvm"}))
      ->capture_default_str();
  datagen->add_option("--out", gen.out, "output file ('-' for stdout)")->required();
  for (auto* sub : {run, compare, datagen}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(opts);
    if (*compare) return cmd_compare(cmp_opts, cmp);
    if (*verify) return cmd_verify(only);
    if (*datagen) return cmd_datagen(gen, gen_opts);
  } catch (const acgd::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const acgd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const acgd::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
