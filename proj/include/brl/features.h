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

// Binary observation of the auction for the player to act. All "who" bits
// are relative to that player: rel(p) = (p - to_act) mod 4, clockwise.
//
//   offset            width      content
//   0                 4          (we not vul, we vul, they not vul, they vul)
//   4                 4          rel seat passed before the opening bid
//   8                 4*B        bid b made by rel seat (B = number of bids)
//   8 + 4B            4*B        double of bid b by rel seat
//   8 + 8B            4*B        redouble of bid b by rel seat
//   8 + 12B           4N         own hand by card index
//
// With the standard deck B = 35, N = 13 and the width is 480.

#ifndef BRL_FEATURES_H_
#define BRL_FEATURES_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brl/auction.h"
#include "brl/common.h"
#include "brl/deals.h"

namespace brl {

struct FeatureLayout {
  int vulnerability = 0;
  int opening_passes = 4;
  int bids = 8;
  int doubles = 0;
  int redoubles = 0;
  int hand = 0;
  int width = 0;

  static FeatureLayout For(const GameVariant& v);
};

struct Observation {
  std::vector<std::uint8_t> bits;
  CallMask mask;
  Seat to_act = Seat::kNorth;
};

// Writes the encoding into `out` (length feature_width), as 0/1 values.
// Throws ContractViolation if the auction is over or the hand size is not N.
template <typename T>
void EncodeInto(const AuctionState& state, CardSet hand,
                Vulnerability vulnerability, std::span<T> out);

Observation Encode(const AuctionState& state, CardSet hand,
                   Vulnerability vulnerability);

// Convenience: encodes for the player to act in `deal`.
Observation Encode(const AuctionState& state, const Deal& deal);

struct DecodedCall {
  enum class Kind : std::uint8_t { kBid, kDouble, kRedouble };
  Kind kind;
  int bid_index;     // which bid (0 = 1C) the call refers to
  int relative_seat; // maker relative to the observer

  friend bool operator==(const DecodedCall&, const DecodedCall&) = default;
};

// Reads back the three call blocks, ordered by bid index and then
// bid, double, redouble. Throws ContractViolation on a malformed group.
std::vector<DecodedCall> DecodeCalls(std::span<const std::uint8_t> bits,
                                     const GameVariant& variant);

// The calls of `state` as they would appear in DecodeCalls, for `observer`.
std::vector<DecodedCall> CallsFromHistory(const AuctionState& state,
                                          Seat observer);

// Human-readable dump with one labelled line per segment.
std::string DescribeObservation(const Observation& obs,
                                const GameVariant& variant);

}  // namespace brl

#endif  // BRL_FEATURES_H_
