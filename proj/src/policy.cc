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

#include <algorithm>

#include "brl/features.h"

namespace brl {

int GreedyAction(const float* probs, CallMask mask, int width) {
  int best = -1;
  for (int a = 0; a < width; ++a) {
    if (!mask.test(a)) continue;
    if (best < 0 || probs[a] > probs[best]) best = a;
  }
  if (best < 0) throw ContractViolation("no legal call to choose from");
  return best;
}

int SampleAction(const float* probs, CallMask mask, int width, Rng& rng) {
  const double u = rng.Uniform();
  double total = 0;
  for (int a = 0; a < width; ++a) {
    if (mask.test(a)) total += probs[a];
  }
  double acc = 0;
  int last = -1;
  for (int a = 0; a < width; ++a) {
    if (!mask.test(a)) continue;
    last = a;
    if (probs[a] <= 0) continue;
    acc += probs[a];
    if (u * total < acc) return a;
  }
  if (last < 0) throw ContractViolation("no legal call to choose from");
  // Rounding left u just above the accumulated mass: take the last legal
  // call that carries probability.
  for (int a = width - 1; a >= 0; --a) {
    if (mask.test(a) && probs[a] > 0) return a;
  }
  return last;
}

void EncodeBatch(std::span<const BidRequest> requests,
                 const GameVariant& variant, Matrix<float>& inputs,
                 std::vector<CallMask>& masks) {
  const int width = variant.feature_width();
  const auto n = static_cast<Eigen::Index>(requests.size());
  inputs.resize(width, n);
  masks.resize(requests.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const BidRequest& r = requests[i];
    if (!(r.state->variant() == variant)) {
      throw ContractViolation("request variant " + r.state->variant().Name() +
                              " does not match bidder variant " +
                              variant.Name());
    }
    EncodeInto<float>(*r.state, r.deal->hand(r.state->to_act()),
                      r.deal->vulnerability,
                      std::span<float>(inputs.col(i).data(), width));
    masks[i] = r.state->LegalMask();
  }
}

NetBidder::NetBidder(SharedParams params, const GameVariant& variant,
                     Selection selection, std::uint64_t seed)
    : params_(std::move(params)),
      variant_(variant),
      selection_(selection),
      rng_(seed, /*stream=*/0xB1D) {
  const NetConfig c = params_->Config();
  if (c.input_width != variant.feature_width() ||
      c.policy_width != variant.action_count()) {
    throw ContractViolation("network shape does not fit variant " +
                            variant.Name());
  }
}

NetBidder::NetBidder(const Checkpoint& checkpoint, Selection selection,
                     std::uint64_t seed)
    : NetBidder(std::make_shared<const PolicyValueParams<float>>(
                    checkpoint.params),
                checkpoint.provenance.variant, selection, seed) {}

void NetBidder::Choose(std::span<const BidRequest> requests,
                       std::span<Call> out) {
  if (requests.empty()) return;
  Matrix<float> inputs;
  std::vector<CallMask> masks;
  EncodeBatch(requests, variant_, inputs, masks);
  const ForwardResult<float> fwd = Forward(*params_, inputs, masks);
  const int width = variant_.action_count();
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const float* p = fwd.probs.col(static_cast<Eigen::Index>(i)).data();
    out[i] = Call(selection_ == Selection::kGreedy
                      ? GreedyAction(p, masks[i], width)
                      : SampleAction(p, masks[i], width, rng_));
  }
}

void FunctionBidder::Choose(std::span<const BidRequest> requests,
                            std::span<Call> out) {
  for (std::size_t i = 0; i < requests.size(); ++i) {
    out[i] = fn_(*requests[i].deal, *requests[i].state);
  }
}

std::vector<AuctionState> RunAuctions(std::span<const Deal> deals,
                                      const std::array<Bidder*, 4>& seats) {
  std::vector<AuctionState> states;
  states.reserve(deals.size());
  for (const Deal& d : deals) {
    for (Bidder* b : seats) {
      if (!(b->variant() == d.variant)) {
        throw ContractViolation("bidder variant " + b->variant().Name() +
                                " does not match deal variant " +
                                d.variant.Name());
      }
    }
    states.emplace_back(d.variant, d.dealer);
  }
  // Distinct bidders in seat order.
  std::vector<Bidder*> bidders;
  for (Bidder* b : seats) {
    if (std::find(bidders.begin(), bidders.end(), b) == bidders.end()) {
      bidders.push_back(b);
    }
  }
  std::vector<BidRequest> requests;
  std::vector<std::size_t> owners;
  std::vector<Call> calls;
  for (;;) {
    bool any = false;
    for (Bidder* b : bidders) {
      requests.clear();
      owners.clear();
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].IsTerminal()) continue;
        if (seats[Index(states[i].to_act())] != b) continue;
        requests.push_back({&deals[i], &states[i]});
        owners.push_back(i);
      }
      if (requests.empty()) continue;
      any = true;
      calls.assign(requests.size(), Call::Pass());
      b->Choose(requests, calls);
      for (std::size_t k = 0; k < owners.size(); ++k) {
        states[owners[k]] = states[owners[k]].Apply(calls[k]);
      }
    }
    if (!any) break;
  }
  return states;
}

}  // namespace brl
