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

#include "brl/sl.h"

#include <algorithm>
#include <cmath>

#include "brl/io.h"
#include "brl/policy.h"
#include "brl/teacher.h"
#include "json.hpp"

namespace brl {
namespace {

using json = nlohmann::ordered_json;

constexpr int kEvalBatch = 1024;

}  // namespace

std::string FormatSlRecord(const SlBoardRecord& record) {
  json j;
  j["deal"] = FormatDeal(record.deal);
  j["dealer"] = std::string(1, SeatChar(record.deal.dealer));
  j["vul"] = VulnerabilityName(record.deal.vulnerability);
  json actions = json::array();
  for (Call c : record.actions) actions.push_back(c.index());
  j["actions"] = std::move(actions);
  return j.dump();
}

SlBoardRecord ParseSlRecord(std::string_view text, long line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what(), line);
  }
  try {
    if (!j.is_object()) throw DataError("record is not a JSON object", line);
    for (const char* field : {"deal", "dealer", "vul", "actions"}) {
      if (!j.contains(field)) {
        throw DataError(std::string("missing field '") + field + "'", line);
      }
    }
    SlBoardRecord record;
    record.deal = ParseDeal(j.at("deal").get<std::string>(),
                            ParseSeat(j.at("dealer").get<std::string>()),
                            ParseVulnerability(j.at("vul").get<std::string>()));
    const json& actions = j.at("actions");
    if (!actions.is_array()) {
      throw DataError("'actions' must be an array of integers", line);
    }
    const GameVariant& v = record.deal.variant;
    AuctionState state(v, record.deal.dealer);
    for (std::size_t i = 0; i < actions.size(); ++i) {
      const std::string where = "action " + std::to_string(i);
      if (!actions[i].is_number_integer()) {
        throw DataError(where + " is not an integer", line);
      }
      const int index = actions[i].get<int>();
      if (index < 0 || index >= v.action_count()) {
        throw DataError(where + " = " + std::to_string(index) +
                            " outside [0, " + std::to_string(v.action_count()) +
                            ")",
                        line);
      }
      if (state.IsTerminal()) {
        throw DataError(where + " follows the end of the auction", line);
      }
      const Call c(index);
      const std::string why = state.WhyIllegal(c);
      if (!why.empty()) {
        throw DataError(where + " (" + c.ToString() + ") is illegal: " + why,
                        line);
      }
      state = state.Apply(c);
      record.actions.push_back(c);
    }
    if (!state.IsTerminal()) {
      throw DataError("auction is incomplete after " +
                          std::to_string(actions.size()) + " calls",
                      line);
    }
    return record;
  } catch (const DataError& e) {
    if (e.line() > 0 || line == 0) throw;
    throw DataError(e.what(), line);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad field type: ") + e.what(), line);
  }
}

std::vector<SlBoardRecord> LoadSlDataset(const std::filesystem::path& path) {
  const std::vector<std::string> lines = ReadLines(path);
  std::vector<SlBoardRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i) + 1;
    if (lines[i].empty()) throw DataError("empty line", line_no);
    records.push_back(ParseSlRecord(lines[i], line_no));
    if (records.back().deal.variant != records.front().deal.variant) {
      throw DataError("variant " + records.back().deal.variant.Name() +
                          " differs from the first record's " +
                          records.front().deal.variant.Name(),
                      line_no);
    }
  }
  return records;
}

void StoreSlDataset(const std::vector<SlBoardRecord>& records,
                    const std::filesystem::path& path) {
  WriteFileAtomically(path, [&](std::ostream& out) {
    for (const SlBoardRecord& r : records) out << FormatSlRecord(r) << '\n';
  });
}

std::vector<SlBoardRecord> GenerateTeacherDataset(std::uint64_t seed,
                                                  std::size_t count,
                                                  const GameVariant& variant,
                                                  std::int64_t first_board) {
  std::vector<Deal> deals;
  deals.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    deals.push_back(
        GenerateDeal(seed, variant, first_board + static_cast<std::int64_t>(i)));
  }
  FunctionBidder teacher(variant, TeacherCall);
  const auto states = RunAuctions(deals, {&teacher, &teacher, &teacher, &teacher});
  std::vector<SlBoardRecord> records(count);
  for (std::size_t i = 0; i < count; ++i) {
    records[i].deal = deals[i];
    records[i].actions = states[i].history();
  }
  return records;
}

std::vector<SlPair> ExpandPairs(const SlBoardRecord& record) {
  std::vector<SlPair> pairs;
  pairs.reserve(record.actions.size());
  AuctionState state(record.deal.variant, record.deal.dealer);
  for (Call c : record.actions) {
    pairs.push_back({Encode(state, record.deal), c.index()});
    state = state.Apply(c);
  }
  return pairs;
}

std::vector<PairRef> IndexPairs(const std::vector<SlBoardRecord>& records) {
  std::vector<PairRef> refs;
  for (std::size_t b = 0; b < records.size(); ++b) {
    for (std::size_t p = 0; p < records[b].actions.size(); ++p) {
      refs.push_back({static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(p)});
    }
  }
  return refs;
}

SlBatch<float> MakeSlBatch(const std::vector<SlBoardRecord>& records,
                           std::span<const PairRef> refs) {
  if (records.empty()) throw ContractViolation("empty dataset");
  const GameVariant& v = records[refs.empty() ? 0 : refs[0].board].deal.variant;
  const int width = v.feature_width();
  SlBatch<float> batch;
  batch.inputs.resize(width, static_cast<Eigen::Index>(refs.size()));
  batch.masks.resize(refs.size());
  batch.targets.resize(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const SlBoardRecord& r = records[refs[i].board];
    const std::vector<Call> prefix(r.actions.begin(),
                                   r.actions.begin() + refs[i].position);
    const AuctionState state =
        AuctionState::FromHistory(r.deal.variant, r.deal.dealer, prefix);
    EncodeInto<float>(state, r.deal.hand(state.to_act()), r.deal.vulnerability,
                      std::span<float>(
                          batch.inputs.col(static_cast<Eigen::Index>(i)).data(),
                          width));
    batch.masks[i] = state.LegalMask();
    batch.targets[i] = r.actions[refs[i].position].index();
  }
  return batch;
}

SlEvalResult SlEval(const PolicyValueParams<float>& params,
                    const std::vector<SlBoardRecord>& records) {
  const std::vector<PairRef> refs = IndexPairs(records);
  if (refs.empty()) throw DataError("evaluation dataset has no pairs");
  SlEvalResult result;
  result.pairs = refs.size();
  double ce = 0;
  double target_prob = 0;
  std::size_t correct = 0;
  for (std::size_t start = 0; start < refs.size(); start += kEvalBatch) {
    const std::size_t n = std::min<std::size_t>(kEvalBatch, refs.size() - start);
    const SlBatch<float> batch =
        MakeSlBatch(records, std::span<const PairRef>(refs).subspan(start, n));
    const ForwardResult<float> fwd = Forward(params, batch.inputs, batch.masks);
    const int width = static_cast<int>(fwd.probs.rows());
    std::vector<float> logp(width);
    for (std::size_t i = 0; i < n; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      MaskedLogSoftmax(fwd.logits.col(col).data(), batch.masks[i], width,
                       logp.data());
      ce -= logp[batch.targets[i]];
      target_prob += fwd.probs(batch.targets[i], col);
      if (GreedyAction(fwd.probs.col(col).data(), batch.masks[i], width) ==
          batch.targets[i]) {
        ++correct;
      }
    }
  }
  result.cross_entropy = ce / static_cast<double>(refs.size());
  result.accuracy = static_cast<double>(correct) / static_cast<double>(refs.size());
  result.expected_accuracy = target_prob / static_cast<double>(refs.size());
  return result;
}

SlResult SlTrain(const std::vector<SlBoardRecord>& train,
                 const std::vector<SlBoardRecord>& eval, const SlConfig& config,
                 const Checkpoint& init, const SlHooks& hooks) {
  if (config.batch_size <= 0 || config.epochs < 0 || config.learning_rate <= 0) {
    throw ConfigError("SL config needs batch_size > 0, epochs >= 0, lr > 0");
  }
  std::vector<PairRef> refs = IndexPairs(train);
  if (refs.empty()) throw DataError("training dataset has no pairs");
  const GameVariant& variant = init.provenance.variant;
  if (train.front().deal.variant != variant) {
    throw DataError("training data variant " + train.front().deal.variant.Name() +
                    " does not match checkpoint variant " + variant.Name());
  }

  SlResult result;
  result.checkpoint = init;
  Checkpoint& ckpt = result.checkpoint;
  AdamConfig adam_config;
  adam_config.learning_rate = config.learning_rate;
  adam_config.max_grad_norm = config.max_grad_norm;
  AdamState<float> adam = AdamState<float>::Fresh(ckpt.config, adam_config);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng(config.seed, static_cast<std::uint64_t>(epoch));
    Shuffle(refs.begin(), refs.end(), rng);
    double loss_sum = 0;
    std::size_t seen = 0;
    for (std::size_t start = 0; start < refs.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t n = std::min<std::size_t>(
          static_cast<std::size_t>(config.batch_size), refs.size() - start);
      const auto chunk = std::span<const PairRef>(refs).subspan(start, n);
      if (hooks.on_visit) {
        for (const PairRef& r : chunk) hooks.on_visit(r);
      }
      const SlBatch<float> batch = MakeSlBatch(train, chunk);
      const LossAndGrad<float> lg = SlLossAndGrad(ckpt.params, batch);
      AdamStep(ckpt.params, lg.grads, adam);
      loss_sum += static_cast<double>(lg.loss) * static_cast<double>(n);
      seen += n;
    }
    SlEpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(seen);
    const bool last = epoch == config.epochs;
    if (!eval.empty() && config.eval_every > 0 &&
        (epoch % config.eval_every == 0 || last)) {
      const SlEvalResult e = SlEval(ckpt.params, eval);
      m.eval_loss = e.cross_entropy;
      m.eval_acc = e.accuracy;
    }
    result.metrics.push_back(m);
    if (hooks.on_epoch) hooks.on_epoch(m);
  }
  ckpt.adam = std::move(adam);
  ckpt.provenance.stage = "SL";
  ckpt.provenance.update_step = ckpt.adam->step;
  ckpt.provenance.seed = config.seed;
  return result;
}

void WriteSlMetricsCsv(const std::vector<SlEpochMetrics>& metrics,
                       const std::filesystem::path& path) {
  WriteFileAtomically(path, [&](std::ostream& out) {
    out << "epoch,train_loss,eval_loss,eval_acc\n";
    out.precision(9);
    for (const SlEpochMetrics& m : metrics) {
      out << m.epoch << ',' << m.train_loss << ',';
      if (m.eval_loss) out << *m.eval_loss;
      out << ',';
      if (m.eval_acc) out << *m.eval_acc;
      out << '\n';
    }
  });
}

}  // namespace brl
