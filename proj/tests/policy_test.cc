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

#include "brl/policy.h"

#include <gtest/gtest.h>

#include <cmath>

#include "brl/features.h"
#include "brl/teacher.h"

namespace brl {
namespace {

const GameVariant kN5 = GameVariant::Reduced(5);

TEST(GreedyActionTest, PicksLegalMaximumAndBreaksTiesLow) {
  const float probs[6] = {0.1f, 0.3f, 0.3f, 0.05f, 0.25f, 0.0f};
  EXPECT_EQ(GreedyAction(probs, CallMask(0b111111), 6), 1);
  EXPECT_EQ(GreedyAction(probs, CallMask(0b111101), 6), 2);
  EXPECT_EQ(GreedyAction(probs, CallMask(0b011001), 6), 4);
  const float flat[3] = {0.f, 0.f, 0.f};
  EXPECT_EQ(GreedyAction(flat, CallMask(0b110), 3), 1);
}

TEST(SampleActionTest, FrequenciesMatchProbabilities) {
  const float probs[4] = {0.1f, 0.0f, 0.6f, 0.3f};
  Rng rng(3);
  int counts[4] = {};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[SampleAction(probs, CallMask(0b1101), 4, rng)];
  EXPECT_EQ(counts[1], 0);
  for (int a : {0, 2, 3}) {
    const double p = probs[a];
    EXPECT_LT(std::abs(counts[a] - n * p), 5 * std::sqrt(n * p * (1 - p))) << a;
  }
}

TEST(EncodeBatchTest, ColumnsMatchSingleEncodings) {
  std::vector<Deal> deals;
  std::vector<AuctionState> states;
  for (int b = 1; b <= 5; ++b) {
    deals.push_back(GenerateDeal(2, kN5, b));
    states.push_back(
        AuctionState::FromHistory(kN5, deals.back().dealer,
                                  std::vector<Call>(b % 3, Call::Pass())));
  }
  std::vector<BidRequest> requests;
  for (int i = 0; i < 5; ++i) requests.push_back({&deals[i], &states[i]});
  Matrix<float> inputs;
  std::vector<CallMask> masks;
  EncodeBatch(requests, kN5, inputs, masks);
  ASSERT_EQ(inputs.cols(), 5);
  ASSERT_EQ(inputs.rows(), kN5.feature_width());
  for (int i = 0; i < 5; ++i) {
    const Observation o = Encode(states[i], deals[i]);
    EXPECT_EQ(masks[i], o.mask);
    for (int k = 0; k < kN5.feature_width(); ++k) {
      ASSERT_EQ(inputs(k, i), static_cast<float>(o.bits[k]));
    }
  }
}

TEST(NetBidderTest, GreedyMatchesForwardArgmax) {
  const Checkpoint c = InitialCheckpoint(kN5, 16, 2, 11);
  NetBidder bidder(c);
  for (int b = 1; b <= 20; ++b) {
    const Deal d = GenerateDeal(5, kN5, b);
    const AuctionState s(kN5, d.dealer);
    const BidRequest r{&d, &s};
    Call call;
    bidder.Choose(std::span<const BidRequest>(&r, 1), std::span<Call>(&call, 1));
    const Observation o = Encode(s, d);
    Matrix<float> x(kN5.feature_width(), 1);
    for (int k = 0; k < kN5.feature_width(); ++k) x(k, 0) = o.bits[k];
    const auto fwd = Forward(c.params, x, std::vector<CallMask>{o.mask});
    int best = -1;
    for (int a = 0; a < kN5.action_count(); ++a) {
      if (o.mask.test(a) && (best < 0 || fwd.probs(a, 0) > fwd.probs(best, 0))) best = a;
    }
    EXPECT_EQ(call.index(), best) << b;
  }
}

TEST(RunAuctionsTest, BatchesPerBidderAndFinishes) {
  int calls_a = 0, batches_a = 0;
  struct Counting : Bidder {
    GameVariant v;
    int* calls;
    int* batches;
    const GameVariant& variant() const override { return v; }
    void Choose(std::span<const BidRequest> requests, std::span<Call> out) override {
      ++*batches;
      for (std::size_t i = 0; i < requests.size(); ++i) {
        ++*calls;
        // Opens 1C when nobody has bid, passes otherwise.
        out[i] = requests[i].state->highest_bid() ? Call::Pass() : Call::Bid(1, Strain::kClubs);
      }
    }
  } a;
  a.v = kN5;
  a.calls = &calls_a;
  a.batches = &batches_a;
  FunctionBidder pass(kN5, [](const Deal&, const AuctionState&) { return Call::Pass(); });
  std::vector<Deal> deals;
  for (int b = 1; b <= 8; ++b) deals.push_back(GenerateDeal(4, kN5, b));
  const auto states = RunAuctions(deals, {&a, &pass, &a, &pass});
  for (std::size_t i = 0; i < deals.size(); ++i) {
    ASSERT_TRUE(states[i].IsTerminal());
    const Contract c = states[i].FinalContract();
    EXPECT_FALSE(c.passed_out);
    EXPECT_EQ(SideOf(c.declarer), Side::kNS);
    EXPECT_EQ(c.level, 1);
  }
  // Each round issues at most one batch to `a`.
  EXPECT_LE(batches_a, 8);
  EXPECT_GT(calls_a, batches_a);
}

TEST(RunAuctionsTest, TeacherCompletesEveryAuction) {
  FunctionBidder t(kN5, TeacherCall);
  std::vector<Deal> deals;
  for (int b = 1; b <= 200; ++b) deals.push_back(GenerateDeal(6, kN5, b));
  const auto states = RunAuctions(deals, {&t, &t, &t, &t});
  for (const auto& s : states) EXPECT_TRUE(s.IsTerminal());
}

TEST(RunAuctionsTest, RejectsVariantMismatch) {
  FunctionBidder p(GameVariant::Reduced(4),
                   [](const Deal&, const AuctionState&) { return Call::Pass(); });
  const std::vector<Deal> deals{GenerateDeal(1, kN5, 1)};
  EXPECT_THROW(RunAuctions(deals, {&p, &p, &p, &p}), ContractViolation);
}

}  // namespace
}  // namespace brl
