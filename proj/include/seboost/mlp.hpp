#ifndef SEBOOST_MLP_HPP
#define SEBOOST_MLP_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seboost/core.hpp"

namespace seboost {

enum class FinalActivation { kTanh, kLinear };

/// Fully connected network: every hidden layer is affine followed by tanh,
/// the output layer is affine followed by final_activation.
struct MlpSpec {
  std::vector<int> layer_sizes;
  FinalActivation final_activation = FinalActivation::kTanh;

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int layer_count() const { return static_cast<int>(layer_sizes.size()) - 1; }
};

inline void validate(const MlpSpec& spec) {
  if (spec.layer_sizes.size() < 2) {
    throw std::invalid_argument("MlpSpec: need at least 2 layer sizes");
  }
  for (int s : spec.layer_sizes) {
    if (s < 1) throw std::invalid_argument("MlpSpec: layer sizes must be >= 1");
  }
}

/// Total number of parameters: sum over layers of in*out weights + out biases.
inline Index param_count(const MlpSpec& spec) {
  validate(spec);
  Index n = 0;
  for (int l = 0; l + 1 < static_cast<int>(spec.layer_sizes.size()); ++l) {
    n += Index{spec.layer_sizes[l]} * spec.layer_sizes[l + 1] +
         spec.layer_sizes[l + 1];
  }
  return n;
}

// Parameter layout (fixed contract for the whole library): layers are packed
// in order, each layer as its out*in weight matrix in column-major order
// followed by its out bias entries.
namespace detail {

template <typename Scalar>
struct LayerView {
  Eigen::Map<const Mat<Scalar>> weights;
  Eigen::Map<const Vec<Scalar>> bias;
};

template <typename Scalar>
LayerView<Scalar> layer_view(const MlpSpec& spec, const Vec<Scalar>& params,
                             int layer, Index offset) {
  const Index in = spec.layer_sizes[layer];
  const Index out = spec.layer_sizes[layer + 1];
  return {Eigen::Map<const Mat<Scalar>>(params.data() + offset, out, in),
          Eigen::Map<const Vec<Scalar>>(params.data() + offset + out * in,
                                        out)};
}

inline Index layer_span(const MlpSpec& spec, int layer) {
  return Index{spec.layer_sizes[layer]} * spec.layer_sizes[layer + 1] +
         spec.layer_sizes[layer + 1];
}

template <typename Scalar>
void check_params(const MlpSpec& spec, const Vec<Scalar>& params) {
  if (params.size() != param_count(spec)) {
    throw std::invalid_argument(
        "params length " + std::to_string(params.size()) +
        " does not match spec parameter count " +
        std::to_string(param_count(spec)));
  }
}

/// Activations of every layer, A[0] = inputs, A[L] = network output.
template <typename Scalar>
std::vector<Mat<Scalar>> forward_pass(const MlpSpec& spec,
                                      const Vec<Scalar>& params,
                                      const Mat<Scalar>& inputs) {
  check_params(spec, params);
  if (inputs.cols() != spec.input_dim()) {
    throw std::invalid_argument("inputs have " + std::to_string(inputs.cols()) +
                                " columns, spec expects " +
                                std::to_string(spec.input_dim()));
  }
  const int layers = spec.layer_count();
  std::vector<Mat<Scalar>> acts(static_cast<std::size_t>(layers) + 1);
  acts[0] = inputs;
  Index offset = 0;
  for (int l = 0; l < layers; ++l) {
    const auto view = layer_view<Scalar>(spec, params, l, offset);
    Mat<Scalar> z = acts[l] * view.weights.transpose();
    z.rowwise() += view.bias.transpose();
    const bool is_last = (l == layers - 1);
    if (!is_last || spec.final_activation == FinalActivation::kTanh) {
      acts[l + 1] = z.array().tanh();
    } else {
      acts[l + 1] = std::move(z);
    }
    offset += layer_span(spec, l);
  }
  return acts;
}

}  // namespace detail

/// Deterministic init: weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)]
/// drawn in storage order, biases zero.
template <typename Scalar = double>
Vec<Scalar> mlp_init(const MlpSpec& spec, std::uint64_t seed) {
  const Index n = param_count(spec);
  Vec<Scalar> params(n);
  std::mt19937_64 gen(seed);
  Index offset = 0;
  for (int l = 0; l + 1 < static_cast<int>(spec.layer_sizes.size()); ++l) {
    const Index in = spec.layer_sizes[l];
    const Index out = spec.layer_sizes[l + 1];
    const double scale = 1.0 / std::sqrt(static_cast<double>(in));
    for (Index i = 0; i < in * out; ++i) {
      params[offset + i] = static_cast<Scalar>(scale * rng::symmetric(gen));
    }
    params.segment(offset + in * out, out).setZero();
    offset += in * out + out;
  }
  return params;
}

template <typename Scalar>
Mat<Scalar> mlp_forward(const MlpSpec& spec, const Vec<Scalar>& params,
                        const Mat<Scalar>& inputs) {
  return detail::forward_pass(spec, params, inputs).back();
}

template <typename Scalar>
struct Batch {
  Mat<Scalar> inputs;   // batch_size x input_dim
  Mat<Scalar> targets;  // batch_size x output_dim

  Index size() const { return inputs.rows(); }
};

template <typename Scalar>
void check_batch(const Batch<Scalar>& batch) {
  if (batch.inputs.rows() != batch.targets.rows() || batch.inputs.rows() < 1) {
    throw std::invalid_argument("batch inputs/targets row counts must match and be >= 1");
  }
}

/// Mean squared error over batch rows plus (weight_decay/2)*||weights||^2;
/// the decay term excludes biases.
template <typename Scalar>
Scalar mlp_loss(const MlpSpec& spec, const Vec<Scalar>& params,
                const Batch<Scalar>& batch, Scalar weight_decay) {
  check_batch(batch);
  const Mat<Scalar> out = mlp_forward(spec, params, batch.inputs);
  if (out.cols() != batch.targets.cols()) {
    throw std::invalid_argument("targets do not match network output dim");
  }
  const Scalar data_term =
      (out - batch.targets).squaredNorm() / static_cast<Scalar>(batch.size());
  Scalar weight_sq = 0;
  Index offset = 0;
  for (int l = 0; l < spec.layer_count(); ++l) {
    const auto view = detail::layer_view<Scalar>(spec, params, l, offset);
    weight_sq += view.weights.squaredNorm();
    offset += detail::layer_span(spec, l);
  }
  return data_term + Scalar(0.5) * weight_decay * weight_sq;
}

/// Reverse-mode gradient of mlp_loss; decay contributes weight_decay * w on
/// weight entries and zero on biases.
template <typename Scalar>
Vec<Scalar> mlp_grad(const MlpSpec& spec, const Vec<Scalar>& params,
                     const Batch<Scalar>& batch, Scalar weight_decay) {
  check_batch(batch);
  const auto acts = detail::forward_pass(spec, params, batch.inputs);
  const Mat<Scalar>& out = acts.back();
  if (out.cols() != batch.targets.cols()) {
    throw std::invalid_argument("targets do not match network output dim");
  }
  const int layers = spec.layer_count();
  const Scalar inv_b = Scalar(1) / static_cast<Scalar>(batch.size());

  Vec<Scalar> grad(params.size());
  std::vector<Index> offsets(static_cast<std::size_t>(layers));
  {
    Index offset = 0;
    for (int l = 0; l < layers; ++l) {
      offsets[static_cast<std::size_t>(l)] = offset;
      offset += detail::layer_span(spec, l);
    }
  }

  // delta holds dLoss/dZ_l for the layer being processed.
  Mat<Scalar> delta = Scalar(2) * inv_b * (out - batch.targets);
  if (spec.final_activation == FinalActivation::kTanh) {
    delta.array() *= Scalar(1) - out.array().square();
  }
  for (int l = layers - 1; l >= 0; --l) {
    const Index in = spec.layer_sizes[l];
    const Index outn = spec.layer_sizes[l + 1];
    const Index offset = offsets[static_cast<std::size_t>(l)];
    const auto view = detail::layer_view<Scalar>(spec, params, l, offset);

    Eigen::Map<Mat<Scalar>> grad_w(grad.data() + offset, outn, in);
    Eigen::Map<Vec<Scalar>> grad_b(grad.data() + offset + outn * in, outn);
    grad_w.noalias() = delta.transpose() * acts[l];
    grad_w += weight_decay * view.weights;
    grad_b = delta.colwise().sum().transpose();

    if (l > 0) {
      Mat<Scalar> prev = delta * view.weights;
      prev.array() *= Scalar(1) - acts[l].array().square();
      delta = std::move(prev);
    }
  }
  return grad;
}

/// Pure loss/gradient capability over a fixed parameterization. Evaluations
/// must be deterministic functions of (params, batch).
template <typename Scalar>
class Objective {
 public:
  virtual ~Objective() = default;
  virtual Scalar loss(const Vec<Scalar>& params,
                      const Batch<Scalar>& batch) const = 0;
  virtual Vec<Scalar> grad(const Vec<Scalar>& params,
                           const Batch<Scalar>& batch) const = 0;
  virtual Scalar weight_decay() const = 0;
};

template <typename Scalar>
class MlpObjective final : public Objective<Scalar> {
 public:
  MlpObjective(MlpSpec spec, Scalar weight_decay)
      : spec_(std::move(spec)), weight_decay_(weight_decay) {
    validate(spec_);
    if (weight_decay_ < Scalar(0)) {
      throw std::invalid_argument("weight_decay must be non-negative");
    }
  }

  Scalar loss(const Vec<Scalar>& params,
              const Batch<Scalar>& batch) const override {
    return mlp_loss(spec_, params, batch, weight_decay_);
  }
  Vec<Scalar> grad(const Vec<Scalar>& params,
                   const Batch<Scalar>& batch) const override {
    return mlp_grad(spec_, params, batch, weight_decay_);
  }
  Scalar weight_decay() const override { return weight_decay_; }
  const MlpSpec& spec() const { return spec_; }

 private:
  MlpSpec spec_;
  Scalar weight_decay_;
};

/// Central-difference gradient, (f(x+eps*e_i) - f(x-eps*e_i)) / (2*eps).
template <typename Scalar>
Vec<Scalar> finite_diff_grad(const Objective<Scalar>& objective,
                             const Vec<Scalar>& params,
                             const Batch<Scalar>& batch, Scalar eps) {
  if (!(eps > Scalar(0))) throw std::invalid_argument("eps must be positive");
  Vec<Scalar> grad(params.size());
  Vec<Scalar> probe = params;
  for (Index i = 0; i < params.size(); ++i) {
    probe[i] = params[i] + eps;
    const Scalar hi = objective.loss(probe, batch);
    probe[i] = params[i] - eps;
    const Scalar lo = objective.loss(probe, batch);
    probe[i] = params[i];
    grad[i] = (hi - lo) / (Scalar(2) * eps);
  }
  return grad;
}

}  // namespace seboost

#endif  // SEBOOST_MLP_HPP
