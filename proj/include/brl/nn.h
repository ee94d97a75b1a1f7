// Copyright 2026 The BRL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Policy-value MLP: a ReLU trunk of `hidden_layers` dense layers of
// `hidden_width` units, a linear policy head with one logit per call and a
// linear scalar value head. Gradients are written out by hand for the two
// losses the trainers need; everything is templated on the scalar type so
// that gradient checks can run in double precision while training runs in
// float.
//
// Activations are stored feature-major: a batch of B inputs is an
// (input_width x B) column-major matrix.

#ifndef BRL_NN_H_
#define BRL_NN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "brl/auction.h"
#include "brl/common.h"
#include "brl/rng.h"

namespace brl {

struct NetConfig {
  int input_width = 480;
  int hidden_layers = 4;
  int hidden_width = 1024;
  int policy_width = 38;

  static NetConfig ForVariant(const GameVariant& v, int hidden_width = 1024,
                              int hidden_layers = 4) {
    return {v.feature_width(), hidden_layers, hidden_width, v.action_count()};
  }
  void Validate() const;
  friend bool operator==(const NetConfig&, const NetConfig&) = default;
};

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
struct DenseLayer {
  Matrix<T> weight;  // out x in
  Vector<T> bias;    // out
};

template <typename T>
struct PolicyValueParams {
  std::vector<DenseLayer<T>> trunk;
  DenseLayer<T> policy;
  DenseLayer<T> value;

  static PolicyValueParams Zeros(const NetConfig& config);
  // He-normal trunk weights (std sqrt(2 / fan_in)), policy head std
  // 0.01 / sqrt(fan_in), value head std 1 / sqrt(fan_in), zero biases.
  static PolicyValueParams Init(const NetConfig& config, Rng& rng);

  // Visits every tensor in storage order: trunk layers first to last, then
  // policy head, then value head; weight before bias within a layer.
  template <typename F>
  void ForEachTensor(F&& f) {
    auto visit = [&](DenseLayer<T>& l) {
      f(std::span<T>(l.weight.data(), static_cast<std::size_t>(l.weight.size())));
      f(std::span<T>(l.bias.data(), static_cast<std::size_t>(l.bias.size())));
    };
    for (auto& l : trunk) visit(l);
    visit(policy);
    visit(value);
  }
  template <typename F>
  void ForEachTensor(F&& f) const {
    const_cast<PolicyValueParams*>(this)->ForEachTensor(
        [&](std::span<T> s) { f(std::span<const T>(s.data(), s.size())); });
  }

  std::size_t NumParams() const;
  bool AllFinite() const;
  NetConfig Config() const;
  std::vector<T> Flatten() const;
  void Unflatten(std::span<const T> flat);

  template <typename U>
  PolicyValueParams<U> Cast() const {
    PolicyValueParams<U> out;
    auto cast = [](const DenseLayer<T>& l) {
      return DenseLayer<U>{l.weight.template cast<U>(), l.bias.template cast<U>()};
    };
    for (const auto& l : trunk) out.trunk.push_back(cast(l));
    out.policy = cast(policy);
    out.value = cast(value);
    return out;
  }
};

template <typename T>
struct ForwardResult {
  // Inputs to every dense layer, then the final trunk output: size
  // hidden_layers + 1.
  std::vector<Matrix<T>> activations;
  Matrix<T> logits;  // policy_width x B, unmasked
  Matrix<T> probs;   // policy_width x B, exactly 0 at illegal calls
  Vector<T> values;  // B
};

// Masked softmax forward pass. `masks` has one entry per column of
// `inputs`; every mask needs at least one legal call.
template <typename T>
ForwardResult<T> Forward(const PolicyValueParams<T>& params,
                         const Matrix<T>& inputs,
                         std::span<const CallMask> masks);

// Softmax over the legal entries of one logit column; illegal entries are
// set to exactly zero.
template <typename T>
void MaskedSoftmax(const T* logits, CallMask mask, int width, T* probs);

// Log-softmax over the legal entries; illegal entries become -inf.
template <typename T>
void MaskedLogSoftmax(const T* logits, CallMask mask, int width, T* out);

template <typename T>
struct SlBatch {
  Matrix<T> inputs;
  std::vector<CallMask> masks;
  std::vector<int> targets;
};

template <typename T>
struct PpoBatch {
  Matrix<T> inputs;
  std::vector<CallMask> masks;
  std::vector<int> actions;
  std::vector<T> old_log_probs;
  std::vector<T> old_values;
  std::vector<T> advantages;
  std::vector<T> returns;
};

struct PpoLossConfig {
  double clip_ratio = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 1e-3;
  bool normalize_advantages = true;
  bool clip_value_loss = true;
};

struct LossStats {
  double loss = 0;
  double policy_loss = 0;
  double value_loss = 0;
  double entropy = 0;
  double clip_fraction = 0;
  double approx_kl = 0;
  double accuracy = 0;  // argmax == target (SL) or == action (PPO)
};

template <typename T>
struct LossAndGrad {
  T loss = 0;
  PolicyValueParams<T> grads;
  LossStats stats;
};

// Mean masked cross-entropy of the policy against `targets`. The value head
// receives zero gradient. Throws NumericError naming the first sample with
// a non-finite loss.
template <typename T>
LossAndGrad<T> SlLossAndGrad(const PolicyValueParams<T>& params,
                             const SlBatch<T>& batch);

// Clipped-surrogate PPO loss:
//   policy  = mean(-min(r A, clip(r, 1-eps, 1+eps) A)), r = exp(logp - old)
//   value   = 0.5 mean(max((v-R)^2, (v_clip-R)^2)) (or plain squared error)
//   loss    = policy + value_coef * value - entropy_coef * mean(entropy)
// A is normalised over the batch when configured. Entropy is over the
// masked distribution.
template <typename T>
LossAndGrad<T> PpoLossAndGrad(const PolicyValueParams<T>& params,
                              const PpoBatch<T>& batch,
                              const PpoLossConfig& config);

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double max_grad_norm = 0.5;  // <= 0 disables clipping
};

template <typename T>
struct AdamState {
  AdamConfig config;
  std::int64_t step = 0;
  PolicyValueParams<T> m;
  PolicyValueParams<T> v;

  static AdamState Fresh(const NetConfig& net, const AdamConfig& config) {
    return {config, 0, PolicyValueParams<T>::Zeros(net),
            PolicyValueParams<T>::Zeros(net)};
  }
};

// One bias-corrected Adam step after global-norm clipping. Returns the
// gradient norm before clipping. Throws NumericError if the gradients or
// the updated parameters are not finite.
template <typename T>
double AdamStep(PolicyValueParams<T>& params, const PolicyValueParams<T>& grads,
                AdamState<T>& state);

}  // namespace brl

#endif  // BRL_NN_H_
