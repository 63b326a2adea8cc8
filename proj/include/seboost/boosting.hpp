#ifndef SEBOOST_BOOSTING_HPP
#define SEBOOST_BOOSTING_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seboost/baselines.hpp"
#include "seboost/core.hpp"
#include "seboost/data.hpp"
#include "seboost/mlp.hpp"
#include "seboost/subspace.hpp"
#include "seboost/subspace_opt.hpp"

namespace seboost {

template <typename Scalar = double>
struct BoostConfig {
  Index ell = 100;  // baseline steps between subspace optimizations
  Index history = 10;  // direction buffer capacity (M)
  CgConfig<Scalar> cg;
  Index subspace_batch_size = 1000;
  Index baseline_batch_size = 100;
  bool enrich_gradient = false;
  std::optional<Scalar> momentum_mu;  // enables the momentum direction
  std::vector<int> anchor_periods;
  std::uint64_t seed = 1;
  bool boosting_enabled = true;
};

template <typename Scalar>
void validate(const BoostConfig<Scalar>& cfg) {
  if (cfg.ell < 1) throw std::invalid_argument("ell must be >= 1");
  if (cfg.history < 1) {
    throw std::invalid_argument("direction history must be >= 1");
  }
  if (cfg.subspace_batch_size < 1 || cfg.baseline_batch_size < 1) {
    throw std::invalid_argument("batch sizes must be >= 1");
  }
  for (const int r : cfg.anchor_periods) {
    if (r < 1) throw std::invalid_argument("anchor periods must be >= 1");
  }
  if (cfg.momentum_mu &&
      (*cfg.momentum_mu < Scalar(0) || *cfg.momentum_mu >= Scalar(1))) {
    throw std::invalid_argument("momentum_mu must be in [0, 1)");
  }
  validate(cfg.cg);
}

/// Distinguishes the subspace batching stream from the baseline batching
/// stream derived from the same user seed.
inline constexpr std::uint64_t kSubspaceStreamSalt = 0x9e3779b97f4a7c15ULL;

/// Shuffled-epoch cursor: deals the training set in sequential slices,
/// reshuffling whenever fewer than a full batch remains (the remainder of an
/// epoch is dropped).
class EpochSampler {
 public:
  EpochSampler(Index n, Index batch_size)
      : n_(n), batch_(batch_size), cursor_(n), indices_(n) {
    if (batch_size < 1 || batch_size > n) {
      throw std::invalid_argument("batch size must be in [1, dataset size]");
    }
    std::iota(indices_.begin(), indices_.end(), Index(0));
  }

  std::vector<Index> next(std::mt19937_64& gen) {
    if (cursor_ + batch_ > n_) {
      rng::shuffle(indices_, gen);
      cursor_ = 0;
    }
    std::vector<Index> out(
        indices_.begin() + cursor_,
        indices_.begin() + cursor_ + static_cast<std::ptrdiff_t>(batch_));
    cursor_ += batch_;
    return out;
  }

 private:
  Index n_, batch_, cursor_;
  std::vector<Index> indices_;
};

template <typename Scalar = double>
Batch<Scalar> batch_from_rows(const Dataset& ds,
                              const std::vector<Index>& rows) {
  Batch<Scalar> batch;
  batch.inputs.resize(static_cast<Index>(rows.size()), ds.inputs.cols());
  batch.targets.resize(static_cast<Index>(rows.size()), ds.targets.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    batch.inputs.row(static_cast<Index>(i)) =
        ds.inputs.row(rows[i]).template cast<Scalar>();
    batch.targets.row(static_cast<Index>(i)) =
        ds.targets.row(rows[i]).template cast<Scalar>();
  }
  return batch;
}

template <typename Scalar = double>
Batch<Scalar> full_batch(const Dataset& ds) {
  return {ds.inputs.template cast<Scalar>(),
          ds.targets.template cast<Scalar>()};
}

/// Uniform sample without replacement, for subspace batches.
template <typename Scalar = double>
Batch<Scalar> sample_batch(const Dataset& ds, Index size,
                           std::mt19937_64& gen) {
  if (size < 1 || size > ds.size()) {
    throw std::invalid_argument("sample size must be in [1, dataset size]");
  }
  return batch_from_rows<Scalar>(ds, rng::sample_indices(ds.size(), size, gen));
}

template <typename Scalar = double>
struct TraceRecord {
  Index outer_step = 0;           // 0 is the initial snapshot
  Index baseline_steps_done = 0;
  double wall_clock_ms = 0.0;
  Scalar train_loss = Scalar(0);
  Scalar test_loss = Scalar(0);
  bool boost_applied = false;
  Scalar phi0 = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar phi_star = std::numeric_limits<Scalar>::quiet_NaN();
  int evals_used = 0;
};

/// Everything a test needs to audit one boosting step.
template <typename Scalar = double>
struct BoostEvent {
  Index boost_index = 0;         // 1-based
  Vec<Scalar> block_start;       // params when the block began
  Vec<Scalar> after;             // params once the subspace step applied
  Vec<Scalar> newest_direction;  // buffer head after the replacement rule
  Scalar phi0 = Scalar(0);
  Scalar phi_star = Scalar(0);
  int evals_used = 0;
  CgStatus status = CgStatus::kNoImprovement;
  bool cumulative_pushed = false;
  bool skipped_empty = false;  // no usable subspace columns this step
};

template <typename Scalar = double>
struct RunHooks {
  std::function<void(Index, const Vec<Scalar>&)> on_outer;
  std::function<void(const BoostEvent<Scalar>&)> on_boost;
};

template <typename Scalar = double>
struct RunResult {
  std::vector<TraceRecord<Scalar>> trace;
  Vec<Scalar> params;
};

/// Alternate ell baseline steps with one subspace optimization until
/// total_baseline_steps have run. Baseline batches come from a shuffled-epoch
/// stream seeded by cfg.seed; all boosting randomness comes from a second,
/// salted stream, so disabling boosting leaves the baseline trajectory
/// bitwise intact. A trailing block shorter than ell still runs (and is
/// traced) but never triggers boosting.
template <typename Scalar>
RunResult<Scalar> seboost_run(const Objective<Scalar>& objective,
                              Vec<Scalar> params,
                              const BaselineConfig<Scalar>& baseline_cfg,
                              const BoostConfig<Scalar>& boost_cfg,
                              const Dataset& train, const Dataset& test,
                              Index total_baseline_steps,
                              const RunHooks<Scalar>& hooks = {}) {
  validate(baseline_cfg);
  validate(boost_cfg);
  check_dataset(train);
  check_dataset(test);
  if (total_baseline_steps < 1) {
    throw std::invalid_argument("total_baseline_steps must be >= 1");
  }
  if (boost_cfg.baseline_batch_size > train.size() ||
      (boost_cfg.boosting_enabled &&
       boost_cfg.subspace_batch_size > train.size())) {
    throw std::invalid_argument("batch sizes exceed the training set");
  }

  const Batch<Scalar> train_eval = full_batch<Scalar>(train);
  const Batch<Scalar> test_eval = full_batch<Scalar>(test);
  const auto grad_fn = [&objective](const Vec<Scalar>& x,
                                    const Batch<Scalar>& b) {
    return objective.grad(x, b);
  };

  std::mt19937_64 baseline_gen(boost_cfg.seed);
  std::mt19937_64 subspace_gen(boost_cfg.seed ^ kSubspaceStreamSalt);
  EpochSampler sampler(train.size(), boost_cfg.baseline_batch_size);
  BaselineState<Scalar> state = baseline_reset(baseline_cfg, params.size());

  DirectionBuffer<Scalar> buffer(boost_cfg.history);
  std::vector<Anchor<Scalar>> anchors;
  anchors.reserve(boost_cfg.anchor_periods.size());
  for (const int r : boost_cfg.anchor_periods) anchors.push_back({params, r});
  MomentumDirection<Scalar> momentum{Vec<Scalar>::Zero(params.size()),
                                     boost_cfg.momentum_mu.value_or(Scalar(0))};

  RunResult<Scalar> result;
  const auto t0 = std::chrono::steady_clock::now();
  const auto emit = [&](Index outer, Index steps_done, bool boosted,
                        Scalar phi0, Scalar phi_star, int evals) {
    TraceRecord<Scalar> rec;
    rec.outer_step = outer;
    rec.baseline_steps_done = steps_done;
    rec.wall_clock_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    rec.train_loss = objective.loss(params, train_eval);
    rec.test_loss = objective.loss(params, test_eval);
    rec.boost_applied = boosted;
    if (boosted) {
      rec.phi0 = phi0;
      rec.phi_star = phi_star;
      rec.evals_used = evals;
    }
    result.trace.push_back(std::move(rec));
  };

  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  emit(0, 0, false, nan, nan, 0);
  if (hooks.on_outer) hooks.on_outer(0, params);

  Index steps_done = 0;
  Index outer = 0;
  Index boost_count = 0;
  while (steps_done < total_baseline_steps) {
    const Index block =
        std::min(boost_cfg.ell, total_baseline_steps - steps_done);
    const Vec<Scalar> block_start = params;
    for (Index s = 0; s < block; ++s) {
      const Batch<Scalar> batch =
          batch_from_rows<Scalar>(train, sampler.next(baseline_gen));
      params = baseline_step(baseline_cfg, state, params, grad_fn, batch);
    }
    steps_done += block;
    ++outer;

    bool boosted = false;
    Scalar phi0 = nan;
    Scalar phi_star = nan;
    int evals = 0;
    if (boost_cfg.boosting_enabled && block == boost_cfg.ell) {
      ++boost_count;
      BoostEvent<Scalar> event;
      event.boost_index = boost_count;
      event.block_start = block_start;

      const Vec<Scalar> cumulative = params - block_start;
      event.cumulative_pushed = buffer.push(cumulative);
      update_anchors(anchors, static_cast<int>(boost_count), params);

      // The subspace batch is drawn every boosting step, consumed or not, so
      // the stream position depends only on the boost count.
      const Batch<Scalar> sub_batch =
          sample_batch<Scalar>(train, boost_cfg.subspace_batch_size,
                               subspace_gen);
      Vec<Scalar> grad_col;
      const Vec<Scalar>* grad_ptr = nullptr;
      if (boost_cfg.enrich_gradient) {
        grad_col = objective.grad(params, sub_batch);
        grad_ptr = &grad_col;
      }
      const MomentumDirection<Scalar>* mom_ptr =
          boost_cfg.momentum_mu ? &momentum : nullptr;
      SubspaceProblem<Scalar> prob;
      prob.base = params;
      prob.directions = assemble(buffer, params, anchors, mom_ptr, grad_ptr);
      prob.objective = &objective;
      prob.batch = sub_batch;

      if (prob.directions.empty()) {
        event.skipped_empty = true;
        event.after = params;
        if (hooks.on_boost) hooks.on_boost(event);
      } else {
        const CgResult<Scalar> cg = cg_minimize(prob, boost_cfg.cg);
        Vec<Scalar> after = apply_subspace_step(prob, cg);
        const Vec<Scalar> realized = after - block_start;
        if (event.cumulative_pushed) {
          buffer.replace_newest(realized);
        } else {
          buffer.push(realized);
        }
        if (boost_cfg.momentum_mu) update_momentum(momentum, realized);
        params = std::move(after);

        boosted = true;
        phi0 = cg.phi0;
        phi_star = cg.phi_star;
        evals = cg.evals_used;
        if (hooks.on_boost) {
          event.after = params;
          if (!buffer.empty()) event.newest_direction = buffer.newest();
          event.phi0 = cg.phi0;
          event.phi_star = cg.phi_star;
          event.evals_used = cg.evals_used;
          event.status = cg.status;
          hooks.on_boost(event);
        }
      }
    }

    emit(outer, steps_done, boosted, phi0, phi_star, evals);
    if (hooks.on_outer) hooks.on_outer(outer, params);
  }

  result.params = std::move(params);
  return result;
}

}  // namespace seboost

#endif  // SEBOOST_BOOSTING_HPP
