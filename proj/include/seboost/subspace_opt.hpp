#ifndef SEBOOST_SUBSPACE_OPT_HPP
#define SEBOOST_SUBSPACE_OPT_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "seboost/core.hpp"
#include "seboost/mlp.hpp"
#include "seboost/subspace.hpp"

namespace seboost {

/// Restricted problem phi(alpha) = f(x + P*alpha), evaluated on one fixed
/// mini-batch for the whole solve.
template <typename Scalar = double>
struct SubspaceProblem {
  Vec<Scalar> base;                  // x
  SubspaceMatrix<Scalar> directions; // P, n x d
  const Objective<Scalar>* objective = nullptr;
  Batch<Scalar> batch;

  Index dim() const { return directions.columns.cols(); }
};

/// Wrap a bare column matrix for direct use in tests and tools; the newest
/// column takes the cumulative tag.
template <typename Scalar>
SubspaceMatrix<Scalar> subspace_from_columns(Mat<Scalar> columns) {
  SubspaceMatrix<Scalar> m;
  m.tags.assign(static_cast<std::size_t>(columns.cols()), ColumnTag::kHistory);
  if (!m.tags.empty()) m.tags.back() = ColumnTag::kCumulative;
  m.columns = std::move(columns);
  return m;
}

template <typename Scalar = double>
struct CgConfig {
  int max_evals = 20;     // combined loss+gradient evaluations, hard cap
  Scalar grad_tol = Scalar(0);
  Scalar wolfe_c1 = Scalar(1e-4);
  Scalar wolfe_c2 = Scalar(0.1);
};

template <typename Scalar>
void validate(const CgConfig<Scalar>& cfg) {
  if (cfg.max_evals < 2) {
    throw std::invalid_argument("cg max_evals must be >= 2");
  }
  if (cfg.grad_tol < Scalar(0)) {
    throw std::invalid_argument("cg grad_tol must be non-negative");
  }
  if (!(Scalar(0) < cfg.wolfe_c1 && cfg.wolfe_c1 < cfg.wolfe_c2 &&
        cfg.wolfe_c2 < Scalar(1))) {
    throw std::invalid_argument("wolfe constants need 0 < c1 < c2 < 1");
  }
}

enum class CgStatus { kImproved, kNoImprovement, kConverged };

template <typename Scalar = double>
struct CgResult {
  Vec<Scalar> alpha_star;
  Scalar phi0 = Scalar(0);
  Scalar phi_star = Scalar(0);
  int evals_used = 0;
  int iterations = 0;
  CgStatus status = CgStatus::kNoImprovement;
};

template <typename Scalar = double>
struct PhiValue {
  Scalar value;
  Vec<Scalar> grad;  // length d
};

/// One restricted evaluation: phi(alpha) together with its chain-rule
/// gradient P' * g(x + P*alpha).
template <typename Scalar>
PhiValue<Scalar> phi_eval(const SubspaceProblem<Scalar>& prob,
                          const Vec<Scalar>& alpha) {
  if (prob.objective == nullptr) {
    throw std::invalid_argument("subspace problem has no objective");
  }
  if (alpha.size() != prob.dim()) {
    throw std::invalid_argument("alpha length does not match subspace dim");
  }
  const Vec<Scalar> point = prob.base + prob.directions.columns * alpha;
  return {prob.objective->loss(point, prob.batch),
          prob.directions.columns.transpose() *
              prob.objective->grad(point, prob.batch)};
}

/// Per-iteration observer: (iteration, alpha, phi, ||grad phi||).
template <typename Scalar>
using CgObserver =
    std::function<void(int, const Vec<Scalar>&, Scalar, Scalar)>;

namespace detail {

/// Minimizer of the cubic Hermite interpolant through (a, fa, da), (b, fb, db).
/// NaN when the interpolant has no interior minimizer.
template <typename Scalar>
Scalar cubic_minimizer(Scalar a, Scalar fa, Scalar da, Scalar b, Scalar fb,
                       Scalar db) {
  const Scalar d1 = da + db - Scalar(3) * (fa - fb) / (a - b);
  const Scalar radicand = d1 * d1 - da * db;
  if (!(radicand >= Scalar(0))) {
    return std::numeric_limits<Scalar>::quiet_NaN();
  }
  Scalar d2 = std::sqrt(radicand);
  if (b < a) d2 = -d2;
  return b - (b - a) * (db + d2 - d1) / (db - da + Scalar(2) * d2);
}

}  // namespace detail

/// Polak-Ribiere+ nonlinear CG over the restricted objective, starting from
/// alpha = 0, with a strong-Wolfe line search (bracket + cubic-interpolation
/// zoom). Every phi evaluation, line-search probes included, costs one unit
/// of the budget. When the gradient tolerance is met the converged iterate is
/// returned (its gradient is the certificate; a line-search probe can sit a
/// few ulps lower in value with a far larger gradient). Otherwise the best
/// alpha seen anywhere is returned, with alpha = 0 as the fallback, so
/// phi_star <= phi0 holds unconditionally either way.
template <typename Scalar>
CgResult<Scalar> cg_minimize(
    const SubspaceProblem<Scalar>& prob, const CgConfig<Scalar>& cfg,
    const std::type_identity_t<CgObserver<Scalar>>& observer = {}) {
  validate(cfg);
  const Index d = prob.dim();
  if (d < 1) throw std::invalid_argument("subspace dimension must be >= 1");

  CgResult<Scalar> result;
  result.alpha_star = Vec<Scalar>::Zero(d);

  int evals = 0;
  bool aborted_nonfinite = false;
  Vec<Scalar> best_alpha = Vec<Scalar>::Zero(d);
  Scalar best_phi = std::numeric_limits<Scalar>::infinity();

  // One budgeted evaluation; false when the budget is spent or the value is
  // non-finite (which poisons the whole solve per the abort contract).
  auto eval = [&](const Vec<Scalar>& alpha, Scalar& value,
                  Vec<Scalar>& grad) -> bool {
    if (evals >= cfg.max_evals) return false;
    ++evals;
    auto out = phi_eval(prob, alpha);
    if (!std::isfinite(out.value) || !out.grad.allFinite()) {
      aborted_nonfinite = true;
      return false;
    }
    if (out.value < best_phi) {
      best_phi = out.value;
      best_alpha = alpha;
    }
    value = out.value;
    grad = std::move(out.grad);
    return true;
  };

  Vec<Scalar> alpha = Vec<Scalar>::Zero(d);
  Scalar phi;
  Vec<Scalar> grad;
  if (!eval(alpha, phi, grad)) {
    // First evaluation failed: nothing trustworthy to report.
    result.phi0 = result.phi_star = std::numeric_limits<Scalar>::quiet_NaN();
    result.evals_used = evals;
    return result;
  }
  result.phi0 = phi;

  bool converged = grad.norm() <= cfg.grad_tol;
  Vec<Scalar> dir = -grad;
  Scalar prev_step = Scalar(1);
  Scalar prev_slope = Scalar(0);
  bool next_is_steepest = true;

  while (!converged && !aborted_nonfinite && evals < cfg.max_evals) {
    bool dir_is_steepest = next_is_steepest;
    next_is_steepest = false;
    Scalar slope = grad.dot(dir);
    if (slope >= Scalar(0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
      dir_is_steepest = true;
      if (slope >= Scalar(0)) break;  // gradient vanished
    }

    // Initial trial: unit step on the first iteration, afterwards the
    // slope-ratio carry-over so well-scaled problems reuse the last step.
    Scalar trial = Scalar(1);
    if (result.iterations > 0) {
      trial = prev_step * prev_slope / slope;
      if (!std::isfinite(trial) || trial <= Scalar(0)) trial = Scalar(1);
    }

    // Strong-Wolfe search on psi(t) = phi(alpha + t*dir).
    struct Point {
      Scalar t, value, slope;
      Vec<Scalar> grad;
    };
    const Point origin{Scalar(0), phi, slope, grad};
    auto probe = [&](Scalar t, Point& p) -> bool {
      Scalar v;
      Vec<Scalar> g;
      if (!eval(alpha + t * dir, v, g)) return false;
      p = {t, v, g.dot(dir), std::move(g)};
      return true;
    };
    const auto armijo_ok = [&](const Point& p) {
      // Once the required decrease drops below one ulp of phi(0), the strict
      // test is unsatisfiable in this precision; accept any non-increase so
      // refinement near a minimizer can proceed by slope instead of value.
      const Scalar required = -cfg.wolfe_c1 * p.t * origin.slope;
      const Scalar floor = std::numeric_limits<Scalar>::epsilon() *
                           std::abs(origin.value);
      if (required <= floor) return p.value <= origin.value;
      return p.value <= origin.value + cfg.wolfe_c1 * p.t * origin.slope;
    };
    const auto curvature_ok = [&](const Point& p) {
      return std::abs(p.slope) <= -cfg.wolfe_c2 * origin.slope;
    };

    bool accepted = false;
    bool out_of_budget = false;
    Point current;

    // Bracketing phase.
    Point lo = origin, hi;
    bool have_bracket = false;
    Point prev = origin;
    Scalar t = trial;
    for (int i = 0; i < 24; ++i) {
      Point p;
      if (!probe(t, p)) {
        out_of_budget = true;
        break;
      }
      if (!armijo_ok(p) || (i > 0 && p.value >= prev.value)) {
        lo = prev;
        hi = p;
        have_bracket = true;
        break;
      }
      if (curvature_ok(p)) {
        current = std::move(p);
        accepted = true;
        break;
      }
      if (p.slope >= Scalar(0)) {
        lo = p;
        hi = prev;
        have_bracket = true;
        break;
      }
      prev = p;
      t *= Scalar(2);
      if (!(t < Scalar(1e12))) {
        // Monotone descent all the way out; take the furthest point.
        current = std::move(p);
        accepted = true;
        break;
      }
    }

    // Zoom phase (shrinks [lo, hi] with lo the best Armijo point so far).
    if (have_bracket && !accepted && !out_of_budget) {
      for (int i = 0; i < 32; ++i) {
        const Scalar span = hi.t - lo.t;
        if (std::abs(span) <=
            Scalar(1e-14) * std::max(Scalar(1), std::abs(lo.t))) {
          break;
        }
        Scalar tz = detail::cubic_minimizer(lo.t, lo.value, lo.slope, hi.t,
                                            hi.value, hi.slope);
        const Scalar lo_end = std::min(lo.t, hi.t);
        const Scalar hi_end = std::max(lo.t, hi.t);
        const Scalar margin = Scalar(0.05) * (hi_end - lo_end);
        if (!std::isfinite(tz) || tz <= lo_end + margin ||
            tz >= hi_end - margin) {
          tz = lo.t + Scalar(0.5) * span;  // bisect
        }
        Point p;
        if (!probe(tz, p)) {
          out_of_budget = true;
          break;
        }
        // Strict comparison: a probe that ties lo in value (descent floored
        // at machine precision) but has negative slope must still move lo,
        // or the bracket silently drops the minimizer.
        if (!armijo_ok(p) || p.value > lo.value) {
          hi = std::move(p);
          continue;
        }
        if (curvature_ok(p)) {
          current = std::move(p);
          accepted = true;
          break;
        }
        if (p.slope * (hi.t - lo.t) >= Scalar(0)) hi = lo;
        lo = std::move(p);
      }
      if (!accepted && !out_of_budget && lo.t > Scalar(0)) {
        // Interval collapsed before the curvature test was met; the lo end
        // still satisfies Armijo and is the best point bracketed.
        current = std::move(lo);
        accepted = true;
      }
    }

    if (!accepted || out_of_budget || aborted_nonfinite) {
      if (out_of_budget || aborted_nonfinite) break;
      // Line search failed outright; retry once along steepest descent.
      if (dir_is_steepest) break;
      dir = -grad;
      next_is_steepest = true;
      continue;
    }

    alpha += current.t * dir;
    phi = current.value;
    prev_step = current.t;
    prev_slope = slope;

    const Scalar beta_pr =
        current.grad.dot(current.grad - grad) / grad.squaredNorm();
    const Scalar beta = std::max(Scalar(0), beta_pr);
    dir = beta * dir - current.grad;
    grad = std::move(current.grad);

    ++result.iterations;
    if (observer) observer(result.iterations, alpha, phi, grad.norm());
    if (grad.norm() <= cfg.grad_tol) converged = true;
  }

  result.evals_used = evals;
  if (aborted_nonfinite) {
    // Abort contract: discard everything and fall back to the base point.
    result.phi_star = result.phi0;
    result.status = CgStatus::kNoImprovement;
    return result;
  }
  if (converged) {
    // Accepted iterates descend strictly (Armijo), so phi <= phi0 holds.
    result.alpha_star = alpha;
    result.phi_star = phi;
    result.status = CgStatus::kConverged;
    return result;
  }
  if (best_phi < result.phi0) {
    result.alpha_star = best_alpha;
    result.phi_star = best_phi;
    result.status = CgStatus::kImproved;
  } else {
    result.phi_star = result.phi0;
    result.status = CgStatus::kNoImprovement;
  }
  return result;
}

/// x + P*alpha_star; bitwise the base point when nothing improved.
template <typename Scalar>
Vec<Scalar> apply_subspace_step(const SubspaceProblem<Scalar>& prob,
                                const CgResult<Scalar>& result) {
  if (result.status == CgStatus::kNoImprovement) return prob.base;
  return prob.base + prob.directions.columns * result.alpha_star;
}

}  // namespace seboost

#endif  // SEBOOST_SUBSPACE_OPT_HPP
