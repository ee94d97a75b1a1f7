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

#include "brl/features.h"

#include <algorithm>
#include <sstream>

namespace brl {

FeatureLayout FeatureLayout::For(const GameVariant& v) {
  FeatureLayout l;
  const int block = v.num_bids() * kNumSeats;
  l.vulnerability = 0;
  l.opening_passes = 4;
  l.bids = 8;
  l.doubles = l.bids + block;
  l.redoubles = l.doubles + block;
  l.hand = l.redoubles + block;
  l.width = l.hand + v.num_cards();
  return l;
}

template <typename T>
void EncodeInto(const AuctionState& state, CardSet hand,
                Vulnerability vulnerability, std::span<T> out) {
  const GameVariant& v = state.variant();
  const FeatureLayout layout = FeatureLayout::For(v);
  if (static_cast<int>(out.size()) != layout.width) {
    throw ContractViolation("observation buffer has " +
                            std::to_string(out.size()) + " entries, expected " +
                            std::to_string(layout.width));
  }
  if (state.IsTerminal()) {
    throw ContractViolation("cannot encode a finished auction");
  }
  if (CountCards(hand) != v.cards_per_hand()) {
    throw ContractViolation("hand holds " + std::to_string(CountCards(hand)) +
                            " cards, expected " +
                            std::to_string(v.cards_per_hand()));
  }
  std::fill(out.begin(), out.end(), T(0));
  const Seat me = state.to_act();
  const Side us = SideOf(me);
  out[layout.vulnerability + (IsVulnerable(vulnerability, us) ? 1 : 0)] = T(1);
  out[layout.vulnerability + 2 +
      (IsVulnerable(vulnerability, Opponents(us)) ? 1 : 0)] = T(1);

  const auto& history = state.history();
  int last_bid = -1;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Call c = history[i];
    const int rel = Relative(state.SeatOfCall(i), me);
    if (c.is_pass()) {
      if (last_bid < 0) out[layout.opening_passes + rel] = T(1);
    } else if (c.is_double()) {
      out[layout.doubles + kNumSeats * last_bid + rel] = T(1);
    } else if (c.is_redouble()) {
      out[layout.redoubles + kNumSeats * last_bid + rel] = T(1);
    } else {
      last_bid = c.bid_index();
      out[layout.bids + kNumSeats * last_bid + rel] = T(1);
    }
  }

  CardSet h = hand;
  while (h) {
    const int card = std::countr_zero(h);
    h &= h - 1;
    out[layout.hand + card] = T(1);
  }
}

template void EncodeInto<float>(const AuctionState&, CardSet, Vulnerability,
                                std::span<float>);
template void EncodeInto<double>(const AuctionState&, CardSet, Vulnerability,
                                 std::span<double>);
template void EncodeInto<std::uint8_t>(const AuctionState&, CardSet,
                                       Vulnerability, std::span<std::uint8_t>);

Observation Encode(const AuctionState& state, CardSet hand,
                   Vulnerability vulnerability) {
  Observation obs;
  obs.bits.resize(state.variant().feature_width());
  EncodeInto<std::uint8_t>(state, hand, vulnerability, obs.bits);
  obs.mask = state.LegalMask();
  obs.to_act = state.to_act();
  return obs;
}

Observation Encode(const AuctionState& state, const Deal& deal) {
  return Encode(state, deal.hand(state.to_act()), deal.vulnerability);
}

std::vector<DecodedCall> DecodeCalls(std::span<const std::uint8_t> bits,
                                     const GameVariant& variant) {
  const FeatureLayout layout = FeatureLayout::For(variant);
  if (static_cast<int>(bits.size()) != layout.width) {
    throw ContractViolation("observation has " + std::to_string(bits.size()) +
                            " bits, expected " + std::to_string(layout.width));
  }
  std::vector<DecodedCall> calls;
  const std::pair<int, DecodedCall::Kind> blocks[] = {
      {layout.bids, DecodedCall::Kind::kBid},
      {layout.doubles, DecodedCall::Kind::kDouble},
      {layout.redoubles, DecodedCall::Kind::kRedouble}};
  for (int b = 0; b < variant.num_bids(); ++b) {
    for (const auto& [offset, kind] : blocks) {
      int found = -1;
      for (int r = 0; r < kNumSeats; ++r) {
        if (bits[offset + kNumSeats * b + r] == 0) continue;
        if (found >= 0) {
          throw ContractViolation("group for bid " + std::to_string(b) +
                                  " is not one-hot");
        }
        found = r;
      }
      if (found >= 0) calls.push_back({kind, b, found});
    }
  }
  return calls;
}

std::vector<DecodedCall> CallsFromHistory(const AuctionState& state,
                                          Seat observer) {
  std::vector<DecodedCall> calls;
  int last_bid = -1;
  const auto& history = state.history();
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Call c = history[i];
    const int rel = Relative(state.SeatOfCall(i), observer);
    if (c.is_bid()) {
      last_bid = c.bid_index();
      calls.push_back({DecodedCall::Kind::kBid, last_bid, rel});
    } else if (c.is_double()) {
      calls.push_back({DecodedCall::Kind::kDouble, last_bid, rel});
    } else if (c.is_redouble()) {
      calls.push_back({DecodedCall::Kind::kRedouble, last_bid, rel});
    }
  }
  // History order already sorts by bid index, then bid < double < redouble.
  return calls;
}

std::string DescribeObservation(const Observation& obs,
                                const GameVariant& variant) {
  const FeatureLayout layout = FeatureLayout::For(variant);
  static constexpr const char* kRel[] = {"self", "lho", "partner", "rho"};
  std::ostringstream os;
  auto bit = [&](int i) { return obs.bits[i] != 0; };
  os << "to_act: " << SeatChar(obs.to_act) << "\n";
  os << "[" << layout.vulnerability << ",4) vulnerability: we="
     << (bit(1) ? "vul" : (bit(0) ? "not-vul" : "?"))
     << " they=" << (bit(3) ? "vul" : (bit(2) ? "not-vul" : "?")) << "\n";
  os << "[" << layout.opening_passes << ",8) opening passes:";
  for (int r = 0; r < kNumSeats; ++r) {
    if (bit(layout.opening_passes + r)) os << " " << kRel[r];
  }
  os << "\n";
  const std::pair<int, const char*> blocks[] = {{layout.bids, "bids"},
                                               {layout.doubles, "doubles"},
                                               {layout.redoubles, "redoubles"}};
  for (const auto& [offset, name] : blocks) {
    os << "[" << offset << "," << offset + variant.num_bids() * kNumSeats
       << ") " << name << ":";
    for (int b = 0; b < variant.num_bids(); ++b) {
      for (int r = 0; r < kNumSeats; ++r) {
        if (bit(offset + kNumSeats * b + r)) {
          os << " " << Call(Call::kFirstBid + b).ToString() << "@" << kRel[r];
        }
      }
    }
    os << "\n";
  }
  os << "[" << layout.hand << "," << layout.width << ") hand:";
  CardSet hand = 0;
  for (int c = 0; c < variant.num_cards(); ++c) {
    if (bit(layout.hand + c)) hand |= CardSet{1} << c;
  }
  os << " " << FormatHand(variant, hand) << "\n";
  os << "legal:";
  for (int a = 0; a < variant.action_count(); ++a) {
    if (obs.mask.test(a)) os << " " << Call(a).ToString();
  }
  os << "\n";
  return os.str();
}

}  // namespace brl
