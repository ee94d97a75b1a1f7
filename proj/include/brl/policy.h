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

// Bidders: anything that picks calls for a batch of (deal, auction) pairs.
// Network bidders batch all requests into one forward pass.

#ifndef BRL_POLICY_H_
#define BRL_POLICY_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "brl/auction.h"
#include "brl/checkpoint.h"
#include "brl/deals.h"
#include "brl/nn.h"
#include "brl/rng.h"

namespace brl {

struct BidRequest {
  const Deal* deal = nullptr;
  const AuctionState* state = nullptr;
};

class Bidder {
 public:
  virtual ~Bidder() = default;
  virtual const GameVariant& variant() const = 0;
  // Fills `out[i]` with a legal call for `requests[i]`.
  virtual void Choose(std::span<const BidRequest> requests,
                      std::span<Call> out) = 0;
};

enum class Selection { kGreedy, kSample };

// Highest-probability legal call; ties go to the lowest index.
int GreedyAction(const float* probs, CallMask mask, int width);
// Inverse-CDF sample over the legal calls.
int SampleAction(const float* probs, CallMask mask, int width, Rng& rng);

// Encodes each request from the acting seat's view into the columns of
// `inputs` (feature_width x n) and collects the legal masks.
void EncodeBatch(std::span<const BidRequest> requests,
                 const GameVariant& variant, Matrix<float>& inputs,
                 std::vector<CallMask>& masks);

using SharedParams = std::shared_ptr<const PolicyValueParams<float>>;

class NetBidder : public Bidder {
 public:
  NetBidder(SharedParams params, const GameVariant& variant,
            Selection selection = Selection::kGreedy, std::uint64_t seed = 0);
  NetBidder(const Checkpoint& checkpoint,
            Selection selection = Selection::kGreedy, std::uint64_t seed = 0);

  const GameVariant& variant() const override { return variant_; }
  void Choose(std::span<const BidRequest> requests,
              std::span<Call> out) override;

  const PolicyValueParams<float>& params() const { return *params_; }

 private:
  SharedParams params_;
  GameVariant variant_;
  Selection selection_;
  Rng rng_;
};

// Wraps a per-request function; used for the rule-based teacher and for
// scripted test opponents.
class FunctionBidder : public Bidder {
 public:
  using Fn = std::function<Call(const Deal&, const AuctionState&)>;
  FunctionBidder(const GameVariant& variant, Fn fn)
      : variant_(variant), fn_(std::move(fn)) {}

  const GameVariant& variant() const override { return variant_; }
  void Choose(std::span<const BidRequest> requests,
              std::span<Call> out) override;

 private:
  GameVariant variant_;
  Fn fn_;
};

// Runs every auction to completion. `seats[i]` bids for seat i; the same
// bidder may sit in several seats. Each round gathers the pending requests
// per bidder so that every bidder sees one batch per round.
std::vector<AuctionState> RunAuctions(std::span<const Deal> deals,
                                      const std::array<Bidder*, 4>& seats);

}  // namespace brl

#endif  // BRL_POLICY_H_
