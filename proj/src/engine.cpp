#include "fpforge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fpforge {

namespace {

using Resolver = std::function<ResolventResult(const GridFunction& w, const GridFunction& current)>;

std::string residual_message(const char* what, std::size_t steps, double residual) {
  std::ostringstream os;
  os << what << " after " << steps << " steps (residual " << residual << ")";
  return os.str();
}

IterationReport picard_outer(const OperatorPair& pair, const GridFunction& u0, const SpaceSpec& s,
                             const SolveOptions& opts, const Resolver& resolve, const Membership& membership,
                             const IterateObserver& observer) {
  s.validate(u0.grid());
  require(opts.tol > 0.0, "tol must be positive");

  IterationReport report;
  GridFunction u = u0;
  std::optional<GridFunction> prev;
  std::optional<GridFunction> prev_a;

  for (std::size_t k = 0;; ++k) {
    GridFunction au = pair.A(u);
    GridFunction bu = pair.B(u);
    const double r = norm(axpy(-1.0, bu, axpy(-1.0, au, u)), s);

    IterationRecord rec;
    rec.residual = r;
    rec.membership_ok = membership ? membership(u) : true;
    if (!rec.membership_ok) ++report.membership_violations;
    report.history.push_back(rec);
    if (observer) {
      observer(IterateView{k, u, au, bu, prev ? &*prev : nullptr, prev_a ? &*prev_a : nullptr});
    }

    report.iterations = k;
    if (!std::isfinite(r)) {
      report.final = u;
      throw NoConvergence(residual_message("outer iteration diverged", k, r), r, report);
    }
    if (r <= opts.tol) {
      report.converged = true;
      report.final = std::move(u);
      return report;
    }
    if (k == opts.max_outer) {
      report.final = u;
      throw NoConvergence(residual_message("outer budget exhausted", k, r), r, report);
    }

    ResolventResult inner = resolve(au, u);
    report.inner_iterations += inner.iterations;
    prev = std::move(u);
    prev_a = std::move(au);
    u = std::move(inner.u);
  }
}

}  // namespace

ResolventResult resolve_contraction(const Operator& B, double b_lip, const GridFunction& w, const SpaceSpec& s,
                                    double tol, std::size_t max_iter) {
  if (!(b_lip >= 0.0 && b_lip < 1.0)) {
    std::ostringstream os;
    os << "resolvent needs 0 <= b_lip < 1, got " << b_lip;
    throw Error(ErrorCode::NotAContraction, os.str());
  }
  require(tol > 0.0, "tol must be positive");

  ResolventResult out{w};
  for (std::size_t k = 0; k < max_iter; ++k) {
    GridFunction next = B(out.u) + w;
    const double r = norm(next - out.u, s);
    out.residuals.push_back(r);
    if (k == 0) {
      // r_k <= b^k r_0, so this many steps reach tol.
      if (r <= tol) out.a_priori_steps = 0;
      else if (b_lip == 0.0) out.a_priori_steps = 1;
      else out.a_priori_steps = static_cast<std::size_t>(std::ceil(std::log(tol / r) / std::log(b_lip)));
    }
    if (!std::isfinite(r)) break;
    out.u = std::move(next);
    out.iterations = k + 1;
    if (r <= tol) return out;
  }
  const double last = out.residuals.empty() ? std::numeric_limits<double>::quiet_NaN() : out.residuals.back();
  throw NoConvergence(residual_message("resolvent did not converge", out.iterations, last), last);
}

ResolventResult resolve_nonexpansive(const Operator& B, const GridFunction& w, const GridFunction& start,
                                     const SpaceSpec& s, double tol, std::size_t max_iter) {
  require(tol > 0.0, "tol must be positive");
  ResolventResult out{start};
  for (std::size_t k = 0; k < max_iter; ++k) {
    GridFunction tu = B(out.u) + w;
    const double r = norm(out.u - tu, s);
    out.residuals.push_back(r);
    out.iterations = k;
    if (r <= tol) return out;
    if (!std::isfinite(r)) break;
    out.u = scale(0.5, out.u + tu);
  }
  const double last = out.residuals.empty() ? std::numeric_limits<double>::quiet_NaN() : out.residuals.back();
  throw NoConvergence(residual_message("averaged resolvent did not converge", out.iterations, last), last);
}

IterationReport krasnoselskii_solve(const OperatorPair& pair, const GridFunction& u0, const SpaceSpec& s,
                                    const SolveOptions& opts, const Membership& membership,
                                    const IterateObserver& observer) {
  if (!(pair.b_lip >= 0.0 && pair.b_lip < 1.0)) {
    throw Error(ErrorCode::NotAContraction, "krasnoselskii_solve needs b_lip < 1");
  }
  const double inner_tol = opts.tol / 10.0;
  Resolver resolve = [&](const GridFunction& w, const GridFunction&) {
    return resolve_contraction(pair.B, pair.b_lip, w, s, inner_tol, opts.max_inner);
  };
  return picard_outer(pair, u0, s, opts, resolve, membership, observer);
}

ContinuationReport continuation_solve(const OperatorPair& pair, const std::vector<double>& lambdas,
                                      const GridFunction& u0, const SpaceSpec& s, const SolveOptions& opts) {
  require(!lambdas.empty(), "continuation needs at least one lambda");
  require(lambdas.back() == 1.0, "continuation schedule must end at lambda = 1");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] > 0.0 && lambdas[i] <= 1.0, "continuation lambdas must lie in (0, 1]");
    if (i > 0) require(lambdas[i] >= lambdas[i - 1], "continuation lambdas must be nondecreasing");
  }
  require(pair.b_lip >= 0.0 && pair.b_lip <= 1.0, "continuation needs b_lip <= 1");

  ContinuationReport out;
  GridFunction start = u0;
  for (const double lambda : lambdas) {
    const double eff = lambda * pair.b_lip;
    OperatorPair stage{pair.A, [B = pair.B, lambda](const GridFunction& u) { return scale(lambda, B(u)); }, eff};
    try {
      IterationReport rep;
      if (eff < 1.0) {
        rep = krasnoselskii_solve(stage, start, s, opts);
      } else {
        const double inner_tol = opts.tol / 10.0;
        Resolver resolve = [&](const GridFunction& w, const GridFunction& current) {
          return resolve_nonexpansive(stage.B, w, current, s, inner_tol, opts.max_inner);
        };
        rep = picard_outer(stage, start, s, opts, resolve, {}, {});
      }
      start = rep.final;
      out.stages.push_back({lambda, std::move(rep)});
    } catch (const Error& e) {
      std::optional<StageReport> last;
      if (!out.stages.empty()) last = out.stages.back();
      std::ostringstream os;
      os << "stage lambda = " << lambda << " failed: " << e.what();
      throw ContinuationStalled(os.str(), lambda, std::move(last));
    }
  }
  return out;
}

OperatorPair reduce_parameter(const OperatorPair& pair, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument, "reduce_parameter needs lambda >= 0");
  }
  require(pair.b_lip >= 0.0 && std::isfinite(pair.b_lip), "b_lip must be finite and nonnegative");
  if (lambda == 0.0) {
    return {pair.A, [](const GridFunction& u) { return GridFunction(u.grid(), u.dim()); }, 0.0};
  }
  const double shift = lambda * pair.b_lip;
  const double denom = 1.0 + shift;
  Operator a = [A = pair.A, shift, denom](const GridFunction& u) { return scale(1.0 / denom, axpy(shift, u, A(u))); };
  Operator b = [B = pair.B, lambda, denom](const GridFunction& u) { return scale(lambda / denom, B(u)); };
  return {std::move(a), std::move(b), shift / denom};
}

}  // namespace fpforge
