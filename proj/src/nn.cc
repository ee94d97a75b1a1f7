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

#include "brl/nn.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace brl {
namespace {

template <typename T>
DenseLayer<T> ZeroLayer(int out, int in) {
  return {Matrix<T>::Zero(out, in), Vector<T>::Zero(out)};
}

template <typename T>
void FillNormal(Matrix<T>& w, double stddev, Rng& rng) {
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w.data()[i] = static_cast<T>(stddev * rng.Normal());
  }
}

}  // namespace

template <typename T>
void MaskedLogSoftmax(const T* logits, CallMask mask, int width, T* out) {
  T max_logit = -std::numeric_limits<T>::infinity();
  for (int j = 0; j < width; ++j) {
    if (mask.test(j)) max_logit = std::max(max_logit, logits[j]);
  }
  T sum = 0;
  for (int j = 0; j < width; ++j) {
    if (mask.test(j)) sum += std::exp(logits[j] - max_logit);
  }
  const T log_sum = std::log(sum);
  for (int j = 0; j < width; ++j) {
    out[j] = mask.test(j) ? logits[j] - max_logit - log_sum
                          : -std::numeric_limits<T>::infinity();
  }
}

namespace {

template <typename T>
void CheckMasks(std::span<const CallMask> masks, Eigen::Index batch,
                int width) {
  if (static_cast<Eigen::Index>(masks.size()) != batch) {
    throw ContractViolation("got " + std::to_string(masks.size()) +
                            " masks for a batch of " + std::to_string(batch));
  }
  const std::uint64_t outside =
      width >= 64 ? 0 : ~((std::uint64_t{1} << width) - 1);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i].none()) {
      throw ContractViolation("mask " + std::to_string(i) +
                              " has no legal action");
    }
    if (masks[i].bits() & outside) {
      throw ContractViolation("mask " + std::to_string(i) +
                              " sets bits beyond the policy width");
    }
  }
}

// Reverse pass shared by both losses. `dlogits` and `dvalues` are the
// derivatives of the (already batch-averaged) loss.
template <typename T>
PolicyValueParams<T> Backward(const PolicyValueParams<T>& params,
                              const ForwardResult<T>& fwd,
                              const Matrix<T>& dlogits,
                              const Vector<T>& dvalues) {
  PolicyValueParams<T> grads;
  grads.trunk.resize(params.trunk.size());
  const Matrix<T>& top = fwd.activations.back();
  grads.policy.weight.noalias() = dlogits * top.transpose();
  grads.policy.bias = dlogits.rowwise().sum();
  grads.value.weight.noalias() = dvalues.transpose() * top.transpose();
  grads.value.bias = Vector<T>::Constant(1, dvalues.sum());

  Matrix<T> dh = params.policy.weight.transpose() * dlogits;
  dh.noalias() += params.value.weight.transpose() * dvalues.transpose();
  for (int l = static_cast<int>(params.trunk.size()) - 1; l >= 0; --l) {
    const Matrix<T>& out = fwd.activations[l + 1];
    Matrix<T> dz = (out.array() > T(0)).select(dh, T(0));
    grads.trunk[l].weight.noalias() = dz * fwd.activations[l].transpose();
    grads.trunk[l].bias = dz.rowwise().sum();
    if (l > 0) dh.noalias() = params.trunk[l].weight.transpose() * dz;
  }
  return grads;
}

}  // namespace

void NetConfig::Validate() const {
  if (input_width <= 0 || hidden_layers < 1 || hidden_width <= 0 ||
      policy_width <= 0 || policy_width > 64) {
    throw ConfigError("invalid network shape (input " +
                      std::to_string(input_width) + ", layers " +
                      std::to_string(hidden_layers) + ", width " +
                      std::to_string(hidden_width) + ", policy " +
                      std::to_string(policy_width) + ")");
  }
}

template <typename T>
PolicyValueParams<T> PolicyValueParams<T>::Zeros(const NetConfig& config) {
  config.Validate();
  PolicyValueParams<T> p;
  int in = config.input_width;
  for (int l = 0; l < config.hidden_layers; ++l) {
    p.trunk.push_back(ZeroLayer<T>(config.hidden_width, in));
    in = config.hidden_width;
  }
  p.policy = ZeroLayer<T>(config.policy_width, in);
  p.value = ZeroLayer<T>(1, in);
  return p;
}

template <typename T>
PolicyValueParams<T> PolicyValueParams<T>::Init(const NetConfig& config,
                                                Rng& rng) {
  PolicyValueParams<T> p = Zeros(config);
  for (auto& l : p.trunk) {
    FillNormal(l.weight, std::sqrt(2.0 / l.weight.cols()), rng);
  }
  FillNormal(p.policy.weight, 0.01 / std::sqrt(p.policy.weight.cols()), rng);
  FillNormal(p.value.weight, 1.0 / std::sqrt(p.value.weight.cols()), rng);
  return p;
}

template <typename T>
std::size_t PolicyValueParams<T>::NumParams() const {
  std::size_t n = 0;
  ForEachTensor([&](std::span<const T> s) { n += s.size(); });
  return n;
}

template <typename T>
bool PolicyValueParams<T>::AllFinite() const {
  bool finite = true;
  ForEachTensor([&](std::span<const T> s) {
    for (T x : s) finite = finite && std::isfinite(x);
  });
  return finite;
}

template <typename T>
NetConfig PolicyValueParams<T>::Config() const {
  NetConfig c;
  c.input_width = static_cast<int>(trunk.front().weight.cols());
  c.hidden_layers = static_cast<int>(trunk.size());
  c.hidden_width = static_cast<int>(trunk.front().weight.rows());
  c.policy_width = static_cast<int>(policy.weight.rows());
  return c;
}

template <typename T>
std::vector<T> PolicyValueParams<T>::Flatten() const {
  std::vector<T> flat;
  flat.reserve(NumParams());
  ForEachTensor(
      [&](std::span<const T> s) { flat.insert(flat.end(), s.begin(), s.end()); });
  return flat;
}

template <typename T>
void PolicyValueParams<T>::Unflatten(std::span<const T> flat) {
  if (flat.size() != NumParams()) {
    throw ContractViolation("flat parameter vector has " +
                            std::to_string(flat.size()) + " entries, expected " +
                            std::to_string(NumParams()));
  }
  std::size_t offset = 0;
  ForEachTensor([&](std::span<T> s) {
    std::copy_n(flat.begin() + offset, s.size(), s.begin());
    offset += s.size();
  });
}

template <typename T>
void MaskedSoftmax(const T* logits, CallMask mask, int width, T* probs) {
  if (mask.none()) throw ContractViolation("mask has no legal action");
  T max_logit = -std::numeric_limits<T>::infinity();
  for (int j = 0; j < width; ++j) {
    if (mask.test(j)) max_logit = std::max(max_logit, logits[j]);
  }
  T sum = 0;
  for (int j = 0; j < width; ++j) {
    if (mask.test(j)) {
      probs[j] = std::exp(logits[j] - max_logit);
      sum += probs[j];
    } else {
      probs[j] = T(0);
    }
  }
  for (int j = 0; j < width; ++j) probs[j] /= sum;
}

template <typename T>
ForwardResult<T> Forward(const PolicyValueParams<T>& params,
                         const Matrix<T>& inputs,
                         std::span<const CallMask> masks) {
  const int width = static_cast<int>(params.policy.weight.rows());
  if (inputs.rows() != params.trunk.front().weight.cols()) {
    throw ContractViolation("input has " + std::to_string(inputs.rows()) +
                            " features, network expects " +
                            std::to_string(params.trunk.front().weight.cols()));
  }
  CheckMasks<T>(masks, inputs.cols(), width);
  ForwardResult<T> fwd;
  fwd.activations.reserve(params.trunk.size() + 1);
  fwd.activations.push_back(inputs);
  for (const auto& layer : params.trunk) {
    Matrix<T> z = layer.weight * fwd.activations.back();
    z.colwise() += layer.bias;
    fwd.activations.push_back(z.cwiseMax(T(0)));
  }
  const Matrix<T>& top = fwd.activations.back();
  fwd.logits = params.policy.weight * top;
  fwd.logits.colwise() += params.policy.bias;
  fwd.values = (params.value.weight * top).transpose();
  fwd.values.array() += params.value.bias(0);
  fwd.probs.resize(width, inputs.cols());
  for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
    MaskedSoftmax(fwd.logits.col(i).data(), masks[i], width,
                  fwd.probs.col(i).data());
  }
  return fwd;
}

template <typename T>
LossAndGrad<T> SlLossAndGrad(const PolicyValueParams<T>& params,
                             const SlBatch<T>& batch) {
  const Eigen::Index n = batch.inputs.cols();
  if (n == 0) throw ContractViolation("empty batch");
  if (static_cast<Eigen::Index>(batch.targets.size()) != n) {
    throw ContractViolation("targets do not match the batch size");
  }
  const ForwardResult<T> fwd = Forward(params, batch.inputs, batch.masks);
  const int width = static_cast<int>(fwd.logits.rows());
  Matrix<T> dlogits = fwd.probs;
  std::vector<T> log_probs(width);
  double total = 0;
  int correct = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int t = batch.targets[i];
    if (t < 0 || t >= width || !batch.masks[i].test(t)) {
      throw ContractViolation("target " + std::to_string(t) + " of sample " +
                              std::to_string(i) + " is not a legal call");
    }
    MaskedLogSoftmax(fwd.logits.col(i).data(), batch.masks[i], width,
                     log_probs.data());
    const T loss = -log_probs[t];
    if (!std::isfinite(loss)) {
      throw NumericError("non-finite SL loss at batch index " +
                         std::to_string(i));
    }
    total += loss;
    Eigen::Index best;
    fwd.probs.col(i).maxCoeff(&best);
    correct += best == t;
    dlogits(t, i) -= T(1);
  }
  dlogits /= static_cast<T>(n);
  LossAndGrad<T> out;
  out.loss = static_cast<T>(total / n);
  out.grads = Backward(params, fwd, dlogits, Vector<T>(Vector<T>::Zero(n)));
  out.stats.loss = out.stats.policy_loss = total / n;
  out.stats.accuracy = static_cast<double>(correct) / n;
  return out;
}

template <typename T>
LossAndGrad<T> PpoLossAndGrad(const PolicyValueParams<T>& params,
                              const PpoBatch<T>& batch,
                              const PpoLossConfig& config) {
  const Eigen::Index n = batch.inputs.cols();
  if (n == 0) throw ContractViolation("empty batch");
  const auto sized = [&](std::size_t s) { return static_cast<Eigen::Index>(s) == n; };
  if (!sized(batch.actions.size()) || !sized(batch.old_log_probs.size()) ||
      !sized(batch.old_values.size()) || !sized(batch.advantages.size()) ||
      !sized(batch.returns.size())) {
    throw ContractViolation("PPO batch fields disagree on the batch size");
  }
  const ForwardResult<T> fwd = Forward(params, batch.inputs, batch.masks);
  const int width = static_cast<int>(fwd.logits.rows());

  std::vector<T> adv(batch.advantages.begin(), batch.advantages.end());
  if (config.normalize_advantages) {
    double mean = 0;
    for (T a : adv) mean += a;
    mean /= n;
    double var = 0;
    for (T a : adv) var += (a - mean) * (a - mean);
    const double stddev = std::sqrt(var / n);
    for (T& a : adv) a = static_cast<T>((a - mean) / (stddev + 1e-8));
  }

  const T eps = static_cast<T>(config.clip_ratio);
  const T inv_n = T(1) / static_cast<T>(n);
  Matrix<T> dlogits = Matrix<T>::Zero(width, n);
  Vector<T> dvalues(n);
  std::vector<T> log_probs(width);
  double policy_loss = 0, value_loss = 0, entropy = 0, clipped = 0, kl = 0;
  int matches = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int a = batch.actions[i];
    if (a < 0 || a >= width || !batch.masks[i].test(a)) {
      throw ContractViolation("action " + std::to_string(a) + " of sample " +
                              std::to_string(i) + " is not a legal call");
    }
    MaskedLogSoftmax(fwd.logits.col(i).data(), batch.masks[i], width,
                     log_probs.data());
    const T* p = fwd.probs.col(i).data();

    const T log_ratio = log_probs[a] - batch.old_log_probs[i];
    const T ratio = std::exp(log_ratio);
    const T unclipped = ratio * adv[i];
    const T clipped_term = std::clamp(ratio, T(1) - eps, T(1) + eps) * adv[i];
    const T sample_policy_loss = -std::min(unclipped, clipped_term);
    // d(loss)/d(log p_a); zero when the clipped branch is the active one.
    const T g = unclipped <= clipped_term ? -adv[i] * ratio : T(0);

    T h = 0;
    for (int j = 0; j < width; ++j) {
      if (batch.masks[i].test(j) && p[j] > T(0)) h -= p[j] * log_probs[j];
    }

    const T v = fwd.values(i);
    const T target = batch.returns[i];
    const T err = v - target;
    T sample_value_loss;
    T dv;
    if (config.clip_value_loss) {
      const T delta = std::clamp(v - batch.old_values[i], -eps, eps);
      const T v_clipped = batch.old_values[i] + delta;
      const T err_clipped = v_clipped - target;
      if (err * err >= err_clipped * err_clipped) {
        sample_value_loss = T(0.5) * err * err;
        dv = err;
      } else {
        sample_value_loss = T(0.5) * err_clipped * err_clipped;
        const bool saturated = std::abs(v - batch.old_values[i]) >= eps;
        dv = saturated ? T(0) : err_clipped;
      }
    } else {
      sample_value_loss = T(0.5) * err * err;
      dv = err;
    }

    if (!std::isfinite(sample_policy_loss) || !std::isfinite(sample_value_loss) ||
        !std::isfinite(h)) {
      throw NumericError("non-finite PPO loss at batch index " +
                         std::to_string(i));
    }

    const T ent_coef = static_cast<T>(config.entropy_coef);
    for (int j = 0; j < width; ++j) {
      if (!batch.masks[i].test(j)) continue;
      T d = g * ((j == a ? T(1) : T(0)) - p[j]);
      // -entropy_coef * dH/dz_j, with dH/dz_j = -p_j (log p_j + H).
      if (p[j] > T(0)) d += ent_coef * p[j] * (log_probs[j] + h);
      dlogits(j, i) = d * inv_n;
    }
    dvalues(i) = static_cast<T>(config.value_coef) * dv * inv_n;

    policy_loss += sample_policy_loss;
    value_loss += sample_value_loss;
    entropy += h;
    clipped += std::abs(ratio - T(1)) > eps ? 1.0 : 0.0;
    kl += (ratio - T(1)) - log_ratio;
    Eigen::Index best;
    fwd.probs.col(i).maxCoeff(&best);
    matches += best == a;
  }
  LossAndGrad<T> out;
  out.stats.policy_loss = policy_loss / n;
  out.stats.value_loss = value_loss / n;
  out.stats.entropy = entropy / n;
  out.stats.clip_fraction = clipped / n;
  out.stats.approx_kl = kl / n;
  out.stats.accuracy = static_cast<double>(matches) / n;
  out.stats.loss = out.stats.policy_loss +
                   config.value_coef * out.stats.value_loss -
                   config.entropy_coef * out.stats.entropy;
  out.loss = static_cast<T>(out.stats.loss);
  out.grads = Backward(params, fwd, dlogits, dvalues);
  return out;
}

template <typename T>
double AdamStep(PolicyValueParams<T>& params, const PolicyValueParams<T>& grads,
                AdamState<T>& state) {
  double sq = 0;
  grads.ForEachTensor([&](std::span<const T> g) {
    for (T x : g) sq += static_cast<double>(x) * x;
  });
  const double norm = std::sqrt(sq);
  if (!std::isfinite(norm)) throw NumericError("non-finite gradient norm");
  const AdamConfig& c = state.config;
  T scale = 1;
  if (c.max_grad_norm > 0 && norm > c.max_grad_norm) {
    scale = static_cast<T>(c.max_grad_norm / norm);
  }

  ++state.step;
  const T b1 = static_cast<T>(c.beta1);
  const T b2 = static_cast<T>(c.beta2);
  const T correction1 = static_cast<T>(1 - std::pow(c.beta1, state.step));
  const T correction2 = static_cast<T>(1 - std::pow(c.beta2, state.step));
  const T lr = static_cast<T>(c.learning_rate);
  const T eps = static_cast<T>(c.epsilon);

  std::vector<std::span<T>> p_spans, m_spans, v_spans;
  std::vector<std::span<const T>> g_spans;
  params.ForEachTensor([&](std::span<T> s) { p_spans.push_back(s); });
  state.m.ForEachTensor([&](std::span<T> s) { m_spans.push_back(s); });
  state.v.ForEachTensor([&](std::span<T> s) { v_spans.push_back(s); });
  grads.ForEachTensor([&](std::span<const T> s) { g_spans.push_back(s); });
  if (p_spans.size() != g_spans.size() || p_spans.size() != m_spans.size()) {
    throw ContractViolation("optimizer state does not match the parameters");
  }
  bool finite = true;
  for (std::size_t t = 0; t < p_spans.size(); ++t) {
    auto p = p_spans[t];
    auto m = m_spans[t];
    auto v = v_spans[t];
    auto g = g_spans[t];
    if (p.size() != g.size() || p.size() != m.size()) {
      throw ContractViolation("optimizer tensor shape mismatch");
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      const T gk = g[k] * scale;
      m[k] = b1 * m[k] + (T(1) - b1) * gk;
      v[k] = b2 * v[k] + (T(1) - b2) * gk * gk;
      const T m_hat = m[k] / correction1;
      const T v_hat = v[k] / correction2;
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + eps);
      finite = finite && std::isfinite(p[k]);
    }
  }
  if (!finite) throw NumericError("non-finite parameter after Adam step");
  return norm;
}

#define BRL_INSTANTIATE(T)                                                    \
  template struct PolicyValueParams<T>;                                       \
  template void MaskedSoftmax<T>(const T*, CallMask, int, T*);                \
  template void MaskedLogSoftmax<T>(const T*, CallMask, int, T*);             \
  template ForwardResult<T> Forward<T>(const PolicyValueParams<T>&,           \
                                       const Matrix<T>&,                      \
                                       std::span<const CallMask>);            \
  template LossAndGrad<T> SlLossAndGrad<T>(const PolicyValueParams<T>&,       \
                                           const SlBatch<T>&);                \
  template LossAndGrad<T> PpoLossAndGrad<T>(                                  \
      const PolicyValueParams<T>&, const PpoBatch<T>&, const PpoLossConfig&); \
  template double AdamStep<T>(PolicyValueParams<T>&,                          \
                              const PolicyValueParams<T>&, AdamState<T>&);

BRL_INSTANTIATE(float)
BRL_INSTANTIATE(double)

#undef BRL_INSTANTIATE

}  // namespace brl
