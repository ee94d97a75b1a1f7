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

// Supervised pretraining on complete auctions. Each board expands into one
// (observation, call) pair per call; pairs are produced on demand from
// (board, position) references rather than stored.
//
// Dataset lines are JSON objects with keys in this order:
//   {"deal": "<PBN>", "dealer": "N", "vul": "None", "actions": [0, 3, ...]}

#ifndef BRL_SL_H_
#define BRL_SL_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brl/auction.h"
#include "brl/checkpoint.h"
#include "brl/deals.h"
#include "brl/features.h"
#include "brl/nn.h"

namespace brl {

struct SlBoardRecord {
  Deal deal;
  std::vector<Call> actions;
  friend bool operator==(const SlBoardRecord&, const SlBoardRecord&) = default;
};

std::string FormatSlRecord(const SlBoardRecord& record);
// Validates the deal and replays the actions: every call must be legal and
// the auction must end exactly at the last call.
SlBoardRecord ParseSlRecord(std::string_view text, long line = 0);
std::vector<SlBoardRecord> LoadSlDataset(const std::filesystem::path& path);
void StoreSlDataset(const std::vector<SlBoardRecord>& records,
                    const std::filesystem::path& path);

// Boards `first_board .. first_board + count - 1` of `seed`, bid by the
// rule-based teacher in all four seats.
std::vector<SlBoardRecord> GenerateTeacherDataset(std::uint64_t seed,
                                                  std::size_t count,
                                                  const GameVariant& variant,
                                                  std::int64_t first_board = 1);

struct SlPair {
  Observation observation;
  int target = 0;
};

// One pair per call, from the acting seat's view.
std::vector<SlPair> ExpandPairs(const SlBoardRecord& record);

struct PairRef {
  std::uint32_t board = 0;
  std::uint32_t position = 0;
};
std::vector<PairRef> IndexPairs(const std::vector<SlBoardRecord>& records);

// Encodes the referenced pairs into a training batch.
SlBatch<float> MakeSlBatch(const std::vector<SlBoardRecord>& records,
                           std::span<const PairRef> refs);

struct SlConfig {
  double learning_rate = 1e-4;
  int batch_size = 128;
  int epochs = 40;
  std::uint64_t seed = 0;
  int eval_every = 1;  // epochs between held-out evaluations; 0 disables
  double max_grad_norm = 0.5;
};

struct SlEvalResult {
  double cross_entropy = 0;
  double accuracy = 0;  // greedy call == target
  // Mean probability of the target, the hit rate of a sampled call.
  double expected_accuracy = 0;
  std::size_t pairs = 0;
};

struct SlEpochMetrics {
  int epoch = 0;
  double train_loss = 0;
  std::optional<double> eval_loss;
  std::optional<double> eval_acc;
};

struct SlHooks {
  // Called once per pair as it enters a batch.
  std::function<void(const PairRef&)> on_visit;
  std::function<void(const SlEpochMetrics&)> on_epoch;
};

struct SlResult {
  Checkpoint checkpoint;
  std::vector<SlEpochMetrics> metrics;
};

// Minimises the masked cross-entropy of `init`'s policy head on `train`.
// The epoch permutation is drawn from Rng(seed, epoch).
SlResult SlTrain(const std::vector<SlBoardRecord>& train,
                 const std::vector<SlBoardRecord>& eval, const SlConfig& config,
                 const Checkpoint& init, const SlHooks& hooks = {});

// Mean cross-entropy and top-1 (greedy) accuracy over every pair. Throws
// DataError on an empty dataset.
SlEvalResult SlEval(const PolicyValueParams<float>& params,
                    const std::vector<SlBoardRecord>& records);

void WriteSlMetricsCsv(const std::vector<SlEpochMetrics>& metrics,
                       const std::filesystem::path& path);

}  // namespace brl

#endif  // BRL_SL_H_
