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

#ifndef BRL_DEALS_H_
#define BRL_DEALS_H_

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "brl/common.h"

namespace brl {

// A set of cards as a bitmask over card indices of one variant.
using CardSet = std::uint64_t;

enum class Suit : std::uint8_t { kClubs = 0, kDiamonds = 1, kHearts = 2, kSpades = 3 };

constexpr int Index(Suit s) { return static_cast<int>(s); }

struct Card {
  Suit suit = Suit::kClubs;
  int rank = 14;  // 2..14, ace high

  // card_index = N * suit + (rank - lowest_rank): clubs first, ranks
  // ascending within each suit.
  int IndexIn(const GameVariant& v) const {
    return v.ranks_per_suit * Index(suit) + (rank - v.lowest_rank());
  }
  static Card FromIndex(int index, const GameVariant& v) {
    return Card{static_cast<Suit>(index / v.ranks_per_suit),
                v.lowest_rank() + index % v.ranks_per_suit};
  }
  std::string ToString() const;  // e.g. "SA", "HT", "C2"

  friend bool operator==(const Card&, const Card&) = default;
};

char RankChar(int rank);  // 2..9, T, J, Q, K, A

// Bits of `variant` that belong to suit `s`.
inline CardSet SuitMask(const GameVariant& v, Suit s) {
  const CardSet one_suit = (CardSet{1} << v.ranks_per_suit) - 1;
  return one_suit << (v.ranks_per_suit * Index(s));
}

inline int CountCards(CardSet cards) { return std::popcount(cards); }

struct Deal {
  GameVariant variant;
  std::array<CardSet, kNumSeats> hands{};
  Seat dealer = Seat::kNorth;
  Vulnerability vulnerability = Vulnerability::kNone;

  CardSet hand(Seat s) const { return hands[Index(s)]; }
  // Seat holding card `index`. Requires a valid deal.
  Seat Holder(int index) const;
  // Each seat holds exactly N cards and every card is dealt exactly once.
  bool IsValid() const;

  friend bool operator==(const Deal&, const Deal&) = default;
};

// Standard duplicate schedule: dealer rotates N,E,S,W from board 1 and
// vulnerability follows the 16-board cycle.
Seat DealerForBoard(std::int64_t board_number);
Vulnerability VulnerabilityForBoard(std::int64_t board_number);

// Deterministic deal for (seed, board_number).
//
// Algorithm: Rng(seed, board_number) (xoshiro256**; see rng.h) drives a
// Fisher-Yates shuffle of the card indices 0..4N-1, iterating i from 4N-1
// down to 1 and swapping position i with position Below(i + 1). After the
// shuffle, position k goes to seat k / N (North, East, South, West).
Deal GenerateDeal(std::uint64_t seed, const GameVariant& variant,
                  std::int64_t board_number);

// PBN-style deal text "D:S.H.D.C S.H.D.C S.H.D.C S.H.D.C", first hand is
// seat D, remaining hands clockwise, ranks descending. The dealer is used
// as the first seat when formatting.
std::string FormatDeal(const Deal& deal);
std::string FormatHand(const GameVariant& v, CardSet hand);

// Parses the deal grammar above. The variant is inferred from the hand
// sizes (13 cards per hand is standard). Throws DataError with a character
// position for duplicate cards, wrong hand sizes, ranks outside the
// variant, or malformed separators.
Deal ParseDeal(std::string_view text, Seat dealer = Seat::kNorth,
               Vulnerability vulnerability = Vulnerability::kNone);

}  // namespace brl

#endif  // BRL_DEALS_H_
