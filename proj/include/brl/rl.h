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

// PPO with GAE over a vector of bidding environments. The learner always
// sits North-South with one set of parameters for both seats; East-West is
// an opponent drawn uniformly from a pool of frozen past snapshots, redrawn
// whenever an episode starts. The only reward is the terminal double-dummy
// score of the final contract, normalised to [-1, 1] from the NS side.
//
// Rollout buffers are laid out time-major: transition (t, e) lives at
// t * num_envs + e. Transition t of slot e carries the reward of the episode
// that ended before the learner's next decision in that slot, with done = 1.

#ifndef BRL_RL_H_
#define BRL_RL_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "brl/auction.h"
#include "brl/checkpoint.h"
#include "brl/dds.h"
#include "brl/nn.h"
#include "brl/policy.h"
#include "brl/rng.h"

namespace brl {

struct PpoConfig {
  int num_envs = 256;
  int rollout_length = 32;
  double gae_lambda = 0.95;
  double discount = 1.0;
  double clip_ratio = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 1e-3;
  int minibatch_size = 1024;
  double learning_rate = 1e-6;
  int update_steps = 10000;
  int epochs_per_update = 10;
  double max_grad_norm = 0.5;
  bool normalize_advantages = true;
  bool clip_value_loss = true;
  std::uint64_t seed = 0;

  void Validate() const;
  PpoLossConfig LossConfig() const;
};

struct FspConfig {
  bool enabled = true;
  int snapshot_every = 100;  // updates between pool additions
};

// Training from a random initialisation: 10x learning rate, 2x updates.
void ApplyNoSlAblation(PpoConfig& config);

class OpponentPool {
 public:
  explicit OpponentPool(SharedParams initial);

  void Add(SharedParams params) { entries_.push_back(std::move(params)); }
  // Replaces the whole pool with a single entry.
  void Reset(SharedParams params);
  std::size_t size() const { return entries_.size(); }
  const SharedParams& at(std::size_t i) const { return entries_.at(i); }
  std::size_t Sample(Rng& rng) const { return rng.Below(entries_.size()); }

 private:
  std::vector<SharedParams> entries_;
};

struct EnvSlot {
  std::size_t record = 0;  // index into the DDS dataset
  AuctionState state{GameVariant::Reduced(5), Seat::kNorth};
  std::size_t opponent = 0;
  Rng rng;
};

inline bool LearnerToAct(const AuctionState& s) {
  return SideOf(s.to_act()) == Side::kNS;
}

// Advances every listed slot until the learner must choose among two or
// more calls or the auction ends. Opponent calls are sampled from the
// slot's opponent; calls with a single legal option are applied for either
// side without consulting a network. Returns, per slot, the NS-side reward
// when the auction ended.
std::vector<std::optional<double>> StepToLearner(
    std::span<EnvSlot* const> slots, const OpponentPool& pool,
    const std::vector<DdsRecord>& dataset);

// NS-side reward of a finished auction on `record`.
double TerminalReward(const AuctionState& state, const DdsRecord& record);

struct RolloutBuffer {
  int num_envs = 0;
  int length = 0;
  Matrix<float> observations;  // feature_width x (length * num_envs)
  std::vector<CallMask> masks;
  std::vector<int> actions;
  std::vector<float> log_probs;
  std::vector<float> values;
  std::vector<float> rewards;
  std::vector<std::uint8_t> dones;
  std::vector<Seat> seats;
  std::vector<float> bootstrap;  // value of each slot's state after step T-1

  std::size_t size() const { return actions.size(); }
};

struct EpisodeStats {
  std::size_t episodes = 0;
  double reward_sum = 0;
  double abs_reward_sum = 0;
};

class VectorEnv {
 public:
  // `dataset` must outlive the environment.
  VectorEnv(const std::vector<DdsRecord>& dataset, int num_envs,
            std::uint64_t seed);

  // Draws fresh boards and opponents for every slot.
  void Reset(const OpponentPool& pool);

  // Exactly `length` learner decisions per slot, sampled from the learner
  // policy; finished episodes restart on the next board with a new opponent.
  RolloutBuffer Collect(const PolicyValueParams<float>& learner,
                        const OpponentPool& pool, int length);

  const std::vector<EnvSlot>& slots() const { return slots_; }
  // Selection counts per pool entry over all episode starts so far.
  const std::vector<std::uint64_t>& opponent_picks() const { return picks_; }
  std::size_t dataset_wraps() const { return wraps_; }
  // Episodes finished since the last call.
  EpisodeStats TakeEpisodeStats();

 private:
  void StartEpisode(EnvSlot& slot, const OpponentPool& pool);
  std::size_t NextRecord();

  const std::vector<DdsRecord>* dataset_;
  std::vector<EnvSlot> slots_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  std::size_t wraps_ = 0;
  Rng data_rng_;
  std::vector<std::uint64_t> picks_;
  EpisodeStats stats_;
};

struct GaeResult {
  std::vector<float> advantages;
  std::vector<float> returns;
};

// Generalised advantage estimation along each slot's decision sequence,
// computed in double precision:
//   delta_t = r_t + gamma (1 - d_t) V_{t+1} - V_t
//   A_t     = delta_t + gamma lambda (1 - d_t) A_{t+1}
// with V_T = bootstrap. Returns are A_t + V_t.
GaeResult ComputeGae(std::span<const float> rewards, std::span<const float> values,
                     std::span<const std::uint8_t> dones,
                     std::span<const float> bootstrap, int num_envs, int length,
                     double gae_lambda, double discount);
GaeResult ComputeGae(const RolloutBuffer& buffer, double gae_lambda,
                     double discount);
// Same recursion on double inputs; returns the advantages only.
std::vector<double> GaeAdvantages(std::span<const double> rewards,
                                  std::span<const double> values,
                                  std::span<const std::uint8_t> dones,
                                  std::span<const double> bootstrap, int num_envs,
                                  int length, double gae_lambda, double discount);

// Number of transitions breaking the reward placement rule: reward exactly
// 0 unless done, and |reward| <= 1 when done.
std::size_t CountRewardViolations(const RolloutBuffer& buffer);

// epochs_per_update passes over the buffer in shuffled minibatches. Returns
// loss statistics averaged over all minibatches.
LossStats PpoUpdate(PolicyValueParams<float>& params, AdamState<float>& adam,
                    const RolloutBuffer& buffer, const GaeResult& gae,
                    const PpoConfig& config, Rng& rng);

struct RlMetrics {
  int update = 0;
  double mean_reward = 0;
  double policy_loss = 0;
  double value_loss = 0;
  double entropy = 0;
  double clip_frac = 0;
  double approx_kl = 0;
  std::size_t pool_size = 0;
  double wallclock = 0;
  std::size_t episodes = 0;
};

struct RlOptions {
  PpoConfig ppo;
  FspConfig fsp;
  // Updates after which a checkpoint is emitted; 0 is the starting model.
  std::vector<int> checkpoint_steps;
  std::function<void(const RlMetrics&)> on_update;
  std::function<void(const Checkpoint&)> on_checkpoint;
  std::function<void(const std::string&)> log;
  // Where to write the current model if training hits a numeric failure.
  std::filesystem::path dump_path;
  // Polled after every update; returning true ends training early with the
  // model as of that update.
  std::function<bool()> should_stop;
};

struct RlResult {
  Checkpoint final_checkpoint;
  std::vector<Checkpoint> checkpoints;
  std::vector<RlMetrics> metrics;
  std::size_t transitions = 0;
  std::size_t reward_violations = 0;
  std::vector<std::uint64_t> opponent_picks;
  std::size_t dataset_wraps = 0;
  int updates_done = 0;
  bool stopped_early = false;
};

// collect -> GAE -> update, update_steps times. With FSP the pool starts as
// {start} and gains a snapshot of the learner every snapshot_every updates;
// without it the single opponent is the learner as of the previous update.
RlResult FspTrain(const Checkpoint& start, const std::vector<DdsRecord>& dataset,
                  const RlOptions& options);

void WriteRlMetricsCsv(const std::vector<RlMetrics>& metrics,
                       const std::filesystem::path& path);

}  // namespace brl

#endif  // BRL_RL_H_
