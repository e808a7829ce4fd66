#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acgd/linalg.hpp"
#include "acgd/objective.hpp"

namespace acgd {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// ---------------------------------------------------------------------------
// Analytic objectives, mostly for tests and examples.

/// F(x) = (beta/2) ||x - center||^2
class ScaledQuadratic final : public Objective {
 public:
  ScaledQuadratic(double beta, Vector center);
  std::size_t dim() const override { return static_cast<std::size_t>(center_.size()); }
  std::string name() const override { return "quadratic"; }
  ValueGrad value_and_subgradient(const Vector& x) const override;
  std::optional<double> lipschitz_closed_form(const Ball& ball) const override;

  double beta() const noexcept { return beta_; }

 private:
  double beta_;
  Vector center_;
};

/// F(x) = ||x - center||_1, with sign(0) = 0 as the subgradient choice.
class L1Distance final : public Objective {
 public:
  explicit L1Distance(Vector center);
  std::size_t dim() const override { return static_cast<std::size_t>(center_.size()); }
  std::string name() const override { return "l1"; }
  ValueGrad value_and_subgradient(const Vector& x) const override;
  std::optional<double> lipschitz_closed_form(const Ball& ball) const override;

 private:
  Vector center_;
};

/// F(x) = c . x
class LinearObjective final : public Objective {
 public:
  explicit LinearObjective(Vector c);
  std::size_t dim() const override { return static_cast<std::size_t>(c_.size()); }
  std::string name() const override { return "linear"; }
  ValueGrad value_and_subgradient(const Vector& x) const override;
  std::optional<double> lipschitz_closed_form(const Ball& ball) const override;

 private:
  Vector c_;
};

// ---------------------------------------------------------------------------
// p-norm regression: F(x) = ||Ax - b||_p^p, p in {1, 2}.

struct RegressionData {
  RowMatrix A;
  Vector b;
  std::optional<Vector> x_natural;
};

class RegressionProblem final : public FiniteSumObjective {
 public:
  RegressionProblem(std::shared_ptr<const RegressionData> data, int p);

  std::size_t dim() const override { return static_cast<std::size_t>(data_->A.cols()); }
  std::size_t num_terms() const override { return static_cast<std::size_t>(data_->A.rows()); }
  std::string name() const override { return p_ == 1 ? "reg-l1" : "reg-l2"; }

  using FiniteSumObjective::value_and_subgradient;
  ValueGrad value_and_subgradient(const Vector& x,
                                  std::span<const std::size_t> subset) const override;
  double value(const Vector& x) const override;

  int p() const noexcept { return p_; }
  const RegressionData& data() const noexcept { return *data_; }
  std::shared_ptr<const RegressionData> data_ptr() const noexcept { return data_; }

 private:
  std::shared_ptr<const RegressionData> data_;
  int p_;
};

/// A, x_natural ~ N(0, 1) i.i.d.; b = A x_natural + w with w ~ N(0, sigma2).
/// Bitwise reproducible for a fixed seed on a given toolchain.
RegressionData generate_regression_data(std::size_t n, std::size_t d, double sigma2,
                                        std::uint64_t seed);

RegressionProblem generate_regression(std::size_t n, std::size_t d, double sigma2, int p,
                                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// Binary classification on sparse rows.

struct Dataset {
  std::vector<SparseVector> rows;
  std::vector<double> labels;  // each -1 or +1
  std::size_t dim = 0;

  std::size_t size() const noexcept { return rows.size(); }
  /// Throws UsageError when the invariants do not hold.
  void validate() const;
};

enum class Loss { Logistic, Hinge };

/// F(x) = sum_i loss(y_i a_i . x) + (reg/2) ||x||^2
///
/// The regularizer is not subsampled: restricted to a subset only the loss
/// sum is rescaled.
class ClassificationProblem final : public FiniteSumObjective {
 public:
  ClassificationProblem(std::shared_ptr<const Dataset> data, Loss loss,
                        double regularization = 0.0);

  std::size_t dim() const override { return data_->dim; }
  std::size_t num_terms() const override { return data_->size(); }
  std::string name() const override { return loss_ == Loss::Logistic ? "logistic" : "hinge"; }

  using FiniteSumObjective::value_and_subgradient;
  ValueGrad value_and_subgradient(const Vector& x,
                                  std::span<const std::size_t> subset) const override;
  double value(const Vector& x) const override;
  std::optional<double> lipschitz_closed_form(const Ball& ball) const override;

  Loss loss() const noexcept { return loss_; }
  double regularization() const noexcept { return reg_; }
  const Dataset& data() const noexcept { return *data_; }

 private:
  std::shared_ptr<const Dataset> data_;
  Loss loss_;
  double reg_;
};

// ---------------------------------------------------------------------------
// File formats.

/// libsvm / SVMlight text: "<label> <idx>:<val> ..." with 1-based, strictly
/// increasing indices. Labels {+1, 1} map to +1 and {-1, 0} to -1.
/// `dim_override`, when set, must be at least max index + 1.
Dataset parse_libsvm(std::istream& in, std::optional<std::size_t> dim_override = std::nullopt);
Dataset load_libsvm(const std::filesystem::path& path,
                    std::optional<std::size_t> dim_override = std::nullopt);

/// Binary container: "ACGD1", u64 n, u64 d, A row-major, b, x_natural; all
/// little-endian, values as IEEE-754 binary64. A missing x_natural is
/// written as NaNs.
void write_container(std::ostream& out, const RegressionData& data);
void save_container(const std::filesystem::path& path, const RegressionData& data);
RegressionData read_container(std::istream& in);
RegressionData load_container(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reference optimum for suboptimality reporting.

struct ReferenceOptimum {
  double f_star = 0.0;
  Vector x_star;
  /// False when f_star is only an upper-bound estimate (or CG did not converge).
  bool exact = false;
  std::string method;
};

/// p = 2 regression: conjugate gradient on the normal equations, at most
/// `budget` iterations, stopping at relative residual 1e-12.
/// Anything else: the best objective value seen over `budget`-step runs of
/// both optimizers (plus, for p = 1, an IRLS/vertex refinement). Estimates
/// are upper bounds on F* and are flagged as such.
ReferenceOptimum reference_optimum(const Objective& problem, std::size_t budget);

/// Least-squares solve by CG on the normal equations.
struct CgResult {
  Vector x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};
CgResult solve_least_squares_cg(const RowMatrix& A, const Vector& b, std::size_t max_iterations,
                                double tolerance = 1e-12);

}  // namespace acgd
