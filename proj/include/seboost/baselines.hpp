#ifndef SEBOOST_BASELINES_HPP
#define SEBOOST_BASELINES_HPP

#include <cmath>
#include <stdexcept>

#include "seboost/core.hpp"
#include "seboost/mlp.hpp"

namespace seboost {

enum class BaselineMethod { kSgdMomentum, kNag, kAdaGrad };

template <typename Scalar = double>
struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kSgdMomentum;
  Scalar lr = Scalar(0.1);
  Scalar momentum = Scalar(0.9);          // ignored by AdaGrad
  Scalar adagrad_epsilon = Scalar(1e-10);
};

template <typename Scalar>
void validate(const BaselineConfig<Scalar>& cfg) {
  if (!(cfg.lr > Scalar(0))) {
    throw std::invalid_argument("baseline lr must be positive");
  }
  if (cfg.momentum < Scalar(0) || cfg.momentum >= Scalar(1)) {
    throw std::invalid_argument("baseline momentum must be in [0, 1)");
  }
  if (!(cfg.adagrad_epsilon > Scalar(0))) {
    throw std::invalid_argument("adagrad_epsilon must be positive");
  }
}

/// velocity backs SGD-momentum and NAG, accumulator backs AdaGrad; both are
/// allocated so one state can serve any method of matching dimension.
template <typename Scalar = double>
struct BaselineState {
  Vec<Scalar> velocity;
  Vec<Scalar> accumulator;
};

template <typename Scalar>
BaselineState<Scalar> baseline_reset(const BaselineConfig<Scalar>& cfg,
                                     Index n) {
  validate(cfg);
  return {Vec<Scalar>::Zero(n), Vec<Scalar>::Zero(n)};
}

/// Advance one stochastic step. grad_fn(params, batch) supplies the
/// mini-batch gradient; state is updated in place and the new iterate
/// returned.
template <typename Scalar, typename GradFn>
Vec<Scalar> baseline_step(const BaselineConfig<Scalar>& cfg,
                          BaselineState<Scalar>& state,
                          const Vec<Scalar>& params, GradFn&& grad_fn,
                          const Batch<Scalar>& batch) {
  if (state.velocity.size() != params.size() ||
      state.accumulator.size() != params.size()) {
    throw std::invalid_argument("baseline state does not match params length");
  }
  switch (cfg.method) {
    case BaselineMethod::kSgdMomentum: {
      const Vec<Scalar> g = grad_fn(params, batch);
      if (g.size() != params.size()) {
        throw std::invalid_argument("gradient length mismatch");
      }
      state.velocity = cfg.momentum * state.velocity - cfg.lr * g;
      return params + state.velocity;
    }
    case BaselineMethod::kNag: {
      const Vec<Scalar> lookahead = params + cfg.momentum * state.velocity;
      const Vec<Scalar> g = grad_fn(lookahead, batch);
      if (g.size() != params.size()) {
        throw std::invalid_argument("gradient length mismatch");
      }
      state.velocity = cfg.momentum * state.velocity - cfg.lr * g;
      return params + state.velocity;
    }
    case BaselineMethod::kAdaGrad: {
      const Vec<Scalar> g = grad_fn(params, batch);
      if (g.size() != params.size()) {
        throw std::invalid_argument("gradient length mismatch");
      }
      state.accumulator.array() += g.array().square();
      return params.array() -
             cfg.lr * g.array() /
                 (state.accumulator.array().sqrt() + cfg.adagrad_epsilon);
    }
  }
  throw std::logic_error("unknown baseline method");
}

}  // namespace seboost

#endif  // SEBOOST_BASELINES_HPP
