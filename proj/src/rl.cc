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

#include "brl/rl.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "brl/features.h"
#include "brl/io.h"
#include "brl/scoring.h"

namespace brl {

void PpoConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("ppo: ") + what);
  };
  require(num_envs > 0, "num_envs must be positive");
  require(rollout_length > 0, "rollout_length must be positive");
  require(gae_lambda >= 0 && gae_lambda <= 1, "gae_lambda must lie in [0, 1]");
  require(discount >= 0 && discount <= 1, "discount must lie in [0, 1]");
  require(clip_ratio > 0, "clip_ratio must be positive");
  require(value_coef >= 0, "value_coef must be non-negative");
  require(entropy_coef >= 0, "entropy_coef must be non-negative");
  require(minibatch_size > 0, "minibatch_size must be positive");
  require(learning_rate > 0, "learning_rate must be positive");
  require(update_steps >= 0, "update_steps must be non-negative");
  require(epochs_per_update > 0, "epochs_per_update must be positive");
}

PpoLossConfig PpoConfig::LossConfig() const {
  PpoLossConfig c;
  c.clip_ratio = clip_ratio;
  c.value_coef = value_coef;
  c.entropy_coef = entropy_coef;
  c.normalize_advantages = normalize_advantages;
  c.clip_value_loss = clip_value_loss;
  return c;
}

void ApplyNoSlAblation(PpoConfig& config) {
  config.learning_rate *= 10;
  config.update_steps *= 2;
}

OpponentPool::OpponentPool(SharedParams initial) {
  entries_.push_back(std::move(initial));
}

void OpponentPool::Reset(SharedParams params) {
  entries_.clear();
  entries_.push_back(std::move(params));
}

double TerminalReward(const AuctionState& state, const DdsRecord& record) {
  const GameVariant& v = state.variant();
  const int score = DdsScoreNs(state.FinalContract(), record.table,
                               record.deal.vulnerability, v);
  return Reward(score, Side::kNS, v);
}

std::vector<std::optional<double>> StepToLearner(
    std::span<EnvSlot* const> slots, const OpponentPool& pool,
    const std::vector<DdsRecord>& dataset) {
  std::vector<std::optional<double>> outcome(slots.size());
  std::vector<bool> finished(slots.size(), false);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<BidRequest> requests;
  std::vector<Call> calls;
  Matrix<float> inputs;
  std::vector<CallMask> masks;
  for (;;) {
    groups.clear();
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (finished[i]) continue;
      EnvSlot& s = *slots[i];
      while (!s.state.IsTerminal()) {
        const CallMask mask = s.state.LegalMask();
        if (mask.count() == 1) {
          s.state = s.state.Apply(Call(std::countr_zero(mask.bits())));
          continue;
        }
        if (!LearnerToAct(s.state)) groups[s.opponent].push_back(i);
        break;
      }
      if (s.state.IsTerminal()) {
        outcome[i] = TerminalReward(s.state, dataset[s.record]);
        finished[i] = true;
      } else if (LearnerToAct(s.state)) {
        finished[i] = true;
      }
    }
    if (groups.empty()) break;
    for (const auto& [opponent, members] : groups) {
      const GameVariant& v = slots[members[0]]->state.variant();
      requests.clear();
      for (std::size_t i : members) {
        requests.push_back({&dataset[slots[i]->record].deal, &slots[i]->state});
      }
      EncodeBatch(requests, v, inputs, masks);
      const ForwardResult<float> fwd = Forward(*pool.at(opponent), inputs, masks);
      for (std::size_t k = 0; k < members.size(); ++k) {
        EnvSlot& s = *slots[members[k]];
        const int a = SampleAction(fwd.probs.col(static_cast<Eigen::Index>(k)).data(),
                                   masks[k], v.action_count(), s.rng);
        s.state = s.state.Apply(Call(a));
      }
    }
  }
  return outcome;
}

VectorEnv::VectorEnv(const std::vector<DdsRecord>& dataset, int num_envs,
                     std::uint64_t seed)
    : dataset_(&dataset), data_rng_(seed, /*stream=*/0xDA7A) {
  if (dataset.empty()) throw DataError("DDS dataset is empty");
  if (num_envs <= 0) throw ConfigError("num_envs must be positive");
  slots_.resize(static_cast<std::size_t>(num_envs));
  for (std::size_t e = 0; e < slots_.size(); ++e) {
    slots_[e].rng = Rng(seed, 0x5107 + e);
    slots_[e].state = AuctionState(dataset.front().deal.variant, Seat::kNorth);
  }
  order_.resize(dataset.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  Shuffle(order_.begin(), order_.end(), data_rng_);
}

std::size_t VectorEnv::NextRecord() {
  if (cursor_ == order_.size()) {
    Shuffle(order_.begin(), order_.end(), data_rng_);
    cursor_ = 0;
    ++wraps_;
  }
  return order_[cursor_++];
}

void VectorEnv::StartEpisode(EnvSlot& slot, const OpponentPool& pool) {
  slot.record = NextRecord();
  const Deal& deal = (*dataset_)[slot.record].deal;
  slot.state = AuctionState(deal.variant, deal.dealer);
  slot.opponent = pool.Sample(slot.rng);
  if (picks_.size() < pool.size()) picks_.resize(pool.size(), 0);
  ++picks_[slot.opponent];
}

void VectorEnv::Reset(const OpponentPool& pool) {
  for (EnvSlot& s : slots_) StartEpisode(s, pool);
  std::vector<EnvSlot*> all;
  for (EnvSlot& s : slots_) all.push_back(&s);
  // A fresh auction always reaches an NS decision: NS must call before four
  // passes can end it.
  StepToLearner(all, pool, *dataset_);
}

EpisodeStats VectorEnv::TakeEpisodeStats() {
  EpisodeStats s = stats_;
  stats_ = {};
  return s;
}

RolloutBuffer VectorEnv::Collect(const PolicyValueParams<float>& learner,
                                 const OpponentPool& pool, int length) {
  const GameVariant& v = dataset_->front().deal.variant;
  const int width = v.feature_width();
  const int actions = v.action_count();
  const auto E = static_cast<int>(slots_.size());
  const std::size_t total = static_cast<std::size_t>(E) * length;

  RolloutBuffer buf;
  buf.num_envs = E;
  buf.length = length;
  buf.observations.resize(width, static_cast<Eigen::Index>(total));
  buf.masks.resize(total);
  buf.actions.resize(total);
  buf.log_probs.resize(total);
  buf.values.resize(total);
  buf.rewards.assign(total, 0.0f);
  buf.dones.assign(total, 0);
  buf.seats.resize(total);
  buf.bootstrap.resize(E);

  std::vector<EnvSlot*> all;
  for (EnvSlot& s : slots_) all.push_back(&s);
  std::vector<float> logp(actions);
  Matrix<float> block(width, E);
  std::vector<CallMask> masks(E);

  auto encode_all = [&]() {
    for (int e = 0; e < E; ++e) {
      const EnvSlot& s = slots_[e];
      if (s.state.IsTerminal() || !LearnerToAct(s.state)) {
        throw ContractViolation("slot " + std::to_string(e) +
                                " is not waiting for the learner");
      }
      EncodeInto<float>(s.state, (*dataset_)[s.record].deal.hand(s.state.to_act()),
                        (*dataset_)[s.record].deal.vulnerability,
                        std::span<float>(block.col(e).data(), width));
      masks[e] = s.state.LegalMask();
    }
  };

  for (int t = 0; t < length; ++t) {
    const std::size_t base = static_cast<std::size_t>(t) * E;
    encode_all();
    buf.observations.middleCols(static_cast<Eigen::Index>(base), E) = block;
    const ForwardResult<float> fwd = Forward(learner, block, masks);
    for (int e = 0; e < E; ++e) {
      EnvSlot& s = slots_[e];
      const std::size_t i = base + e;
      const int a = SampleAction(fwd.probs.col(e).data(), masks[e], actions, s.rng);
      MaskedLogSoftmax(fwd.logits.col(e).data(), masks[e], actions, logp.data());
      buf.masks[i] = masks[e];
      buf.actions[i] = a;
      buf.log_probs[i] = logp[a];
      buf.values[i] = fwd.values(e);
      buf.seats[i] = s.state.to_act();
      s.state = s.state.Apply(Call(a));
    }
    std::vector<EnvSlot*> pending = all;
    std::vector<std::size_t> pending_index(E);
    std::iota(pending_index.begin(), pending_index.end(), std::size_t{0});
    bool first = true;
    while (!pending.empty()) {
      const auto out = StepToLearner(pending, pool, *dataset_);
      std::vector<EnvSlot*> restarted;
      std::vector<std::size_t> restarted_index;
      for (std::size_t k = 0; k < pending.size(); ++k) {
        if (!out[k]) continue;
        const std::size_t e = pending_index[k];
        if (first) {
          buf.rewards[base + e] = static_cast<float>(*out[k]);
          buf.dones[base + e] = 1;
        }
        ++stats_.episodes;
        stats_.reward_sum += *out[k];
        stats_.abs_reward_sum += std::abs(*out[k]);
        StartEpisode(*pending[k], pool);
        restarted.push_back(pending[k]);
        restarted_index.push_back(e);
      }
      pending = std::move(restarted);
      pending_index = std::move(restarted_index);
      first = false;
    }
  }
  encode_all();
  const ForwardResult<float> fwd = Forward(learner, block, masks);
  for (int e = 0; e < E; ++e) buf.bootstrap[e] = fwd.values(e);
  return buf;
}

namespace {

template <typename T, typename Emit>
void GaeRecursion(std::span<const T> rewards, std::span<const T> values,
                  std::span<const std::uint8_t> dones, std::span<const T> bootstrap,
                  int num_envs, int length, double gae_lambda, double discount,
                  Emit emit) {
  const std::size_t total = static_cast<std::size_t>(num_envs) * length;
  if (rewards.size() != total || values.size() != total ||
      dones.size() != total || bootstrap.size() != static_cast<std::size_t>(num_envs)) {
    throw ContractViolation("GAE inputs do not match num_envs x length");
  }
  for (int e = 0; e < num_envs; ++e) {
    double next_value = bootstrap[e];
    double next_adv = 0;
    for (int t = length - 1; t >= 0; --t) {
      const std::size_t i = static_cast<std::size_t>(t) * num_envs + e;
      const double live = dones[i] ? 0.0 : 1.0;
      const double delta = rewards[i] + discount * live * next_value - values[i];
      const double adv = delta + discount * gae_lambda * live * next_adv;
      emit(i, adv, adv + values[i]);
      next_value = values[i];
      next_adv = adv;
    }
  }
}

}  // namespace

GaeResult ComputeGae(std::span<const float> rewards, std::span<const float> values,
                     std::span<const std::uint8_t> dones,
                     std::span<const float> bootstrap, int num_envs, int length,
                     double gae_lambda, double discount) {
  GaeResult r;
  r.advantages.resize(rewards.size());
  r.returns.resize(rewards.size());
  GaeRecursion<float>(rewards, values, dones, bootstrap, num_envs, length, gae_lambda,
                      discount, [&](std::size_t i, double adv, double ret) {
                        r.advantages[i] = static_cast<float>(adv);
                        r.returns[i] = static_cast<float>(ret);
                      });
  return r;
}

std::vector<double> GaeAdvantages(std::span<const double> rewards,
                                  std::span<const double> values,
                                  std::span<const std::uint8_t> dones,
                                  std::span<const double> bootstrap, int num_envs,
                                  int length, double gae_lambda, double discount) {
  std::vector<double> adv(rewards.size());
  GaeRecursion<double>(rewards, values, dones, bootstrap, num_envs, length, gae_lambda,
                       discount, [&](std::size_t i, double a, double) { adv[i] = a; });
  return adv;
}

GaeResult ComputeGae(const RolloutBuffer& b, double gae_lambda, double discount) {
  return ComputeGae(b.rewards, b.values, b.dones, b.bootstrap, b.num_envs,
                    b.length, gae_lambda, discount);
}

std::size_t CountRewardViolations(const RolloutBuffer& buffer) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    const float r = buffer.rewards[i];
    if (buffer.dones[i] ? !(std::abs(r) <= 1.0f) : r != 0.0f) ++bad;
  }
  return bad;
}

LossStats PpoUpdate(PolicyValueParams<float>& params, AdamState<float>& adam,
                    const RolloutBuffer& buffer, const GaeResult& gae,
                    const PpoConfig& config, Rng& rng) {
  const std::size_t n = buffer.size();
  if (n == 0) throw ContractViolation("empty rollout buffer");
  const PpoLossConfig loss_config = config.LossConfig();
  const auto mb = static_cast<std::size_t>(config.minibatch_size);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  LossStats mean;
  int batches = 0;
  PpoBatch<float> batch;
  for (int epoch = 0; epoch < config.epochs_per_update; ++epoch) {
    Shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += mb) {
      const std::size_t m = std::min(mb, n - start);
      batch.inputs.resize(buffer.observations.rows(), static_cast<Eigen::Index>(m));
      batch.masks.resize(m);
      batch.actions.resize(m);
      batch.old_log_probs.resize(m);
      batch.old_values.resize(m);
      batch.advantages.resize(m);
      batch.returns.resize(m);
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = order[start + k];
        batch.inputs.col(static_cast<Eigen::Index>(k)) =
            buffer.observations.col(static_cast<Eigen::Index>(i));
        batch.masks[k] = buffer.masks[i];
        batch.actions[k] = buffer.actions[i];
        batch.old_log_probs[k] = buffer.log_probs[i];
        batch.old_values[k] = buffer.values[i];
        batch.advantages[k] = gae.advantages[i];
        batch.returns[k] = gae.returns[i];
      }
      const LossAndGrad<float> lg = PpoLossAndGrad(params, batch, loss_config);
      AdamStep(params, lg.grads, adam);
      mean.loss += lg.stats.loss;
      mean.policy_loss += lg.stats.policy_loss;
      mean.value_loss += lg.stats.value_loss;
      mean.entropy += lg.stats.entropy;
      mean.clip_fraction += lg.stats.clip_fraction;
      mean.approx_kl += lg.stats.approx_kl;
      mean.accuracy += lg.stats.accuracy;
      ++batches;
    }
  }
  for (double* f : {&mean.loss, &mean.policy_loss, &mean.value_loss, &mean.entropy,
                    &mean.clip_fraction, &mean.approx_kl, &mean.accuracy}) {
    *f /= batches;
  }
  return mean;
}

RlResult FspTrain(const Checkpoint& start, const std::vector<DdsRecord>& dataset,
                  const RlOptions& options) {
  const PpoConfig& ppo = options.ppo;
  ppo.Validate();
  if (options.fsp.enabled && options.fsp.snapshot_every <= 0) {
    throw ConfigError("fsp: snapshot_every must be positive");
  }
  if (dataset.empty()) throw DataError("DDS dataset is empty");
  const GameVariant& variant = start.provenance.variant;
  if (dataset.front().deal.variant != variant) {
    throw DataError("dataset variant " + dataset.front().deal.variant.Name() +
                    " does not match checkpoint variant " + variant.Name());
  }
  auto log = [&](const std::string& line) {
    if (options.log) options.log(line);
  };

  RlResult result;
  Checkpoint ckpt = start;
  AdamConfig adam_config;
  adam_config.learning_rate = ppo.learning_rate;
  adam_config.max_grad_norm = ppo.max_grad_norm;
  AdamState<float> adam = AdamState<float>::Fresh(ckpt.config, adam_config);
  auto snapshot = [&] {
    return std::make_shared<const PolicyValueParams<float>>(ckpt.params);
  };
  auto emit = [&](int step) {
    Checkpoint c = ckpt;
    c.adam = adam;
    c.provenance.stage = step == 0 ? start.provenance.stage : "RL";
    c.provenance.update_step = step == 0 ? start.provenance.update_step : step;
    if (step != 0) c.provenance.seed = ppo.seed;
    if (options.on_checkpoint) options.on_checkpoint(c);
    result.checkpoints.push_back(std::move(c));
  };
  auto wants = [&](int step) {
    return std::find(options.checkpoint_steps.begin(),
                     options.checkpoint_steps.end(),
                     step) != options.checkpoint_steps.end();
  };

  OpponentPool pool(snapshot());
  VectorEnv env(dataset, ppo.num_envs, ppo.seed);
  env.Reset(pool);
  Rng update_rng(ppo.seed, /*stream=*/0x99D);
  if (wants(0)) emit(0);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t wraps = 0;

  for (int u = 1; u <= ppo.update_steps; ++u) {
    if (!options.fsp.enabled && u > 1) pool.Reset(snapshot());
    const RolloutBuffer buffer = env.Collect(ckpt.params, pool, ppo.rollout_length);
    result.transitions += buffer.size();
    result.reward_violations += CountRewardViolations(buffer);
    const GaeResult gae = ComputeGae(buffer, ppo.gae_lambda, ppo.discount);
    LossStats stats;
    try {
      stats = PpoUpdate(ckpt.params, adam, buffer, gae, ppo, update_rng);
    } catch (const NumericError& e) {
      std::string where = "update " + std::to_string(u) + ": " + e.what();
      if (!options.dump_path.empty()) {
        Checkpoint dump = ckpt;
        dump.adam = adam;
        dump.provenance.stage = "RL";
        dump.provenance.update_step = u - 1;
        try {
          StoreCheckpoint(dump, options.dump_path);
          where += " (state dumped to " + options.dump_path.string() + ")";
        } catch (const std::exception& io) {
          where += std::string(" (state dump failed: ") + io.what() + ")";
        }
      }
      throw NumericError(where);
    }
    if (env.dataset_wraps() != wraps) {
      wraps = env.dataset_wraps();
      log("dataset exhausted; reshuffled (pass " + std::to_string(wraps + 1) + ")");
    }
    const EpisodeStats eps = env.TakeEpisodeStats();
    if (options.fsp.enabled && u % options.fsp.snapshot_every == 0) {
      pool.Add(snapshot());
    }
    RlMetrics m;
    m.update = u;
    m.mean_reward = eps.episodes ? eps.reward_sum / eps.episodes : 0.0;
    m.policy_loss = stats.policy_loss;
    m.value_loss = stats.value_loss;
    m.entropy = stats.entropy;
    m.clip_frac = stats.clip_fraction;
    m.approx_kl = stats.approx_kl;
    m.pool_size = pool.size();
    m.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    m.episodes = eps.episodes;
    result.metrics.push_back(m);
    if (options.on_update) options.on_update(m);
    if (wants(u)) emit(u);
    result.updates_done = u;
    if (u < ppo.update_steps && options.should_stop && options.should_stop()) {
      result.stopped_early = true;
      log("stopping early after update " + std::to_string(u));
      break;
    }
  }

  ckpt.adam = std::move(adam);
  if (result.updates_done > 0) {
    ckpt.provenance.stage = "RL";
    ckpt.provenance.update_step = result.updates_done;
    ckpt.provenance.seed = ppo.seed;
  }
  result.final_checkpoint = std::move(ckpt);
  result.opponent_picks = env.opponent_picks();
  result.dataset_wraps = env.dataset_wraps();
  return result;
}

void WriteRlMetricsCsv(const std::vector<RlMetrics>& metrics,
                       const std::filesystem::path& path) {
  WriteFileAtomically(path, [&](std::ostream& out) {
    out << "update,mean_reward,policy_loss,value_loss,entropy,clip_frac,"
           "approx_kl,pool_size,wallclock\n";
    out.precision(9);
    for (const RlMetrics& m : metrics) {
      out << m.update << ',' << m.mean_reward << ',' << m.policy_loss << ','
          << m.value_loss << ',' << m.entropy << ',' << m.clip_frac << ','
          << m.approx_kl << ',' << m.pool_size << ',' << m.wallclock << '\n';
    }
  });
}

}  // namespace brl
