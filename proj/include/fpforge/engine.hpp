#pragma once

// Sum-of-operators fixed-point engine for u = A(u) + B(u), with B a
// contraction. The outer loop is Picard iteration on T = (I - B)^{-1} o A;
// the resolvent (I - B)^{-1} is evaluated by Banach iteration.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fpforge/error.hpp"
#include "fpforge/space.hpp"

namespace fpforge {

using Operator = std::function<GridFunction(const GridFunction&)>;

struct OperatorPair {
  Operator A;
  Operator B;
  /// Lipschitz constant of B in the norm of the solve.
  double b_lip = 0.0;
};

struct IterationRecord {
  double residual = 0.0;
  bool membership_ok = true;
  /// Filled by callers that monitor (A5); NaN otherwise.
  double a5_margin = std::numeric_limits<double>::quiet_NaN();
};

struct IterationReport {
  bool converged = false;
  std::size_t iterations = 0;
  /// history[k] describes iterate u_k; residual = ||u_k - A(u_k) - B(u_k)||.
  std::vector<IterationRecord> history;
  std::size_t inner_iterations = 0;
  std::size_t membership_violations = 0;
  GridFunction final{Grid(1.0, 1), 1};

  [[nodiscard]] double final_residual() const {
    return history.empty() ? std::numeric_limits<double>::quiet_NaN() : history.back().residual;
  }
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double last_residual, std::optional<IterationReport> report = {})
      : Error(ErrorCode::NoConvergence, what), last_residual_(last_residual), report_(std::move(report)) {}

  [[nodiscard]] double last_residual() const noexcept { return last_residual_; }
  /// Partial report of the outer loop, when the failure happened there.
  [[nodiscard]] const std::optional<IterationReport>& report() const noexcept { return report_; }

 private:
  double last_residual_;
  std::optional<IterationReport> report_;
};

struct ResolventResult {
  GridFunction u;
  std::size_t iterations = 0;
  /// ||u_{k+1} - u_k|| = ||u_k - B(u_k) - w|| per step.
  std::vector<double> residuals;
  /// Steps sufficient by the a-priori Banach estimate.
  std::size_t a_priori_steps = 0;
};

/// Solves u = B(u) + w from u_0 = w. Throws NotAContraction when
/// b_lip >= 1 and NoConvergence when max_iter steps do not reach tol.
[[nodiscard]] ResolventResult resolve_contraction(const Operator& B, double b_lip, const GridFunction& w,
                                                  const SpaceSpec& s, double tol, std::size_t max_iter);

/// Same fixed-point problem for a nonexpansive B (b_lip == 1), by averaged
/// iteration u <- (u + B(u) + w) / 2 with a fixed budget.
[[nodiscard]] ResolventResult resolve_nonexpansive(const Operator& B, const GridFunction& w,
                                                   const GridFunction& start, const SpaceSpec& s,
                                                   double tol, std::size_t max_iter);

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_outer = 200;
  std::size_t max_inner = 10000;
};

/// What an observer sees after the residual of iterate k has been computed.
struct IterateView {
  std::size_t index;
  const GridFunction& u;
  const GridFunction& Au;
  const GridFunction& Bu;
  /// Previous iterate and A of it; null for k = 0.
  const GridFunction* prev = nullptr;
  const GridFunction* prev_A = nullptr;
};

using Membership = std::function<bool(const GridFunction&)>;
using IterateObserver = std::function<void(const IterateView&)>;

[[nodiscard]] IterationReport krasnoselskii_solve(const OperatorPair& pair, const GridFunction& u0,
                                                  const SpaceSpec& s, const SolveOptions& opts,
                                                  const Membership& membership = {},
                                                  const IterateObserver& observer = {});

struct StageReport {
  double lambda;
  IterationReport report;
};

struct ContinuationReport {
  std::vector<StageReport> stages;
  [[nodiscard]] const IterationReport& final() const { return stages.back().report; }
};

class ContinuationStalled : public Error {
 public:
  ContinuationStalled(const std::string& what, double failed_lambda, std::optional<StageReport> last_good)
      : Error(ErrorCode::ContinuationStalled, what), failed_lambda_(failed_lambda),
        last_good_(std::move(last_good)) {}

  [[nodiscard]] double failed_lambda() const noexcept { return failed_lambda_; }
  [[nodiscard]] const std::optional<StageReport>& last_good() const noexcept { return last_good_; }

 private:
  double failed_lambda_;
  std::optional<StageReport> last_good_;
};

/// Solves u = lambda_n B(u) + A(u) along a nondecreasing schedule ending at
/// 1, warm-starting each stage from the previous one. A terminal stage with
/// lambda * b_lip == 1 uses the averaged resolvent.
[[nodiscard]] ContinuationReport continuation_solve(const OperatorPair& pair, const std::vector<double>& lambdas,
                                                    const GridFunction& u0, const SpaceSpec& s,
                                                    const SolveOptions& opts);

/// Builds (A', B') whose fixed points solve A(u) + lambda B(u) = u:
///   A'(u) = (A(u) + lambda L u) / (1 + lambda L),  B'(u) = lambda B(u) / (1 + lambda L)
/// with L = b_lip, so B' is a lambda L / (1 + lambda L) contraction.
[[nodiscard]] OperatorPair reduce_parameter(const OperatorPair& pair, double lambda);

}  // namespace fpforge
