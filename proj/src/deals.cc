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

#include "brl/deals.h"

#include <numeric>
#include <vector>

#include "brl/rng.h"

namespace brl {
namespace {

// PBN lists suits spades first.
constexpr std::array<Suit, kNumSuits> kPbnSuitOrder = {
    Suit::kSpades, Suit::kHearts, Suit::kDiamonds, Suit::kClubs};

int RankFromChar(char c) {
  switch (c) {
    case 'A':
    case 'a':
      return 14;
    case 'K':
    case 'k':
      return 13;
    case 'Q':
    case 'q':
      return 12;
    case 'J':
    case 'j':
      return 11;
    case 'T':
    case 't':
      return 10;
    default:
      if (c >= '2' && c <= '9') return c - '0';
      return -1;
  }
}

DataError ParseError(const std::string& what, std::size_t pos) {
  return DataError("deal text, position " + std::to_string(pos) + ": " + what);
}

}  // namespace

char RankChar(int rank) { return "..23456789TJQKA"[rank]; }

std::string Card::ToString() const {
  return std::string{"CDHS"[Index(suit)], RankChar(rank)};
}

Seat Deal::Holder(int index) const {
  const CardSet bit = CardSet{1} << index;
  for (Seat s : kAllSeats) {
    if (hands[Index(s)] & bit) return s;
  }
  throw ContractViolation("card " + std::to_string(index) + " is not dealt");
}

bool Deal::IsValid() const {
  CardSet seen = 0;
  for (CardSet h : hands) {
    if (CountCards(h) != variant.cards_per_hand()) return false;
    if (seen & h) return false;
    seen |= h;
  }
  const CardSet all = (CardSet{1} << variant.num_cards()) - 1;
  return seen == all;
}

Seat DealerForBoard(std::int64_t board_number) {
  return SeatAt(static_cast<int>(((board_number - 1) % 4 + 4) % 4));
}

Vulnerability VulnerabilityForBoard(std::int64_t board_number) {
  using V = Vulnerability;
  static constexpr std::array<V, 16> kCycle = {
      V::kNone, V::kNS,   V::kEW,   V::kBoth, V::kNS,   V::kEW,
      V::kBoth, V::kNone, V::kEW,   V::kBoth, V::kNone, V::kNS,
      V::kBoth, V::kNone, V::kNS,   V::kEW};
  return kCycle[((board_number - 1) % 16 + 16) % 16];
}

Deal GenerateDeal(std::uint64_t seed, const GameVariant& variant,
                  std::int64_t board_number) {
  variant.Validate();
  Rng rng(seed, static_cast<std::uint64_t>(board_number));
  const int n = variant.num_cards();
  std::vector<int> deck(n);
  std::iota(deck.begin(), deck.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.Below(static_cast<std::uint64_t>(i) + 1));
    std::swap(deck[i], deck[j]);
  }
  Deal deal;
  deal.variant = variant;
  for (int k = 0; k < n; ++k) {
    deal.hands[k / variant.cards_per_hand()] |= CardSet{1} << deck[k];
  }
  deal.dealer = DealerForBoard(board_number);
  deal.vulnerability = VulnerabilityForBoard(board_number);
  return deal;
}

std::string FormatHand(const GameVariant& v, CardSet hand) {
  std::string out;
  for (int i = 0; i < kNumSuits; ++i) {
    if (i > 0) out.push_back('.');
    const Suit suit = kPbnSuitOrder[i];
    for (int rank = 14; rank >= v.lowest_rank(); --rank) {
      const int index = Card{suit, rank}.IndexIn(v);
      if (hand & (CardSet{1} << index)) out.push_back(RankChar(rank));
    }
  }
  return out;
}

std::string FormatDeal(const Deal& deal) {
  std::string out{SeatChar(deal.dealer), ':'};
  for (int k = 0; k < kNumSeats; ++k) {
    if (k > 0) out.push_back(' ');
    out += FormatHand(deal.variant, deal.hand(NextSeat(deal.dealer, k)));
  }
  return out;
}

Deal ParseDeal(std::string_view text, Seat dealer,
               Vulnerability vulnerability) {
  // Trim surrounding whitespace; positions below refer to the trimmed text
  // offset by `base`.
  std::size_t begin = 0;
  while (begin < text.size() && (text[begin] == ' ' || text[begin] == '\t')) {
    ++begin;
  }
  std::size_t end = text.size();
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                         text[end - 1] == '\r' || text[end - 1] == '\n')) {
    --end;
  }
  const std::string_view body = text.substr(begin, end - begin);
  const std::size_t base = begin;

  if (body.size() < 2 || body[1] != ':') {
    throw ParseError("expected '<seat>:' prefix", base);
  }
  Seat first;
  try {
    first = ParseSeat(body.substr(0, 1));
  } catch (const DataError&) {
    throw ParseError("unknown first seat '" + std::string(body.substr(0, 1)) +
                         "'",
                     base);
  }

  struct Parsed {
    int hand;
    Suit suit;
    int rank;
    std::size_t pos;
  };
  std::vector<Parsed> cards;
  std::array<int, kNumSeats> hand_sizes{};
  int hand = 0;
  int suit_slot = 0;
  for (std::size_t i = 2; i < body.size(); ++i) {
    const char c = body[i];
    const std::size_t pos = base + i;
    if (c == ' ') {
      if (suit_slot != 3) {
        throw ParseError("hand " + std::to_string(hand + 1) + " has " +
                             std::to_string(suit_slot + 1) +
                             " suit groups, expected 4",
                         pos);
      }
      ++hand;
      suit_slot = 0;
      if (hand >= kNumSeats) throw ParseError("more than four hands", pos);
    } else if (c == '.') {
      ++suit_slot;
      if (suit_slot > 3) throw ParseError("more than four suit groups", pos);
    } else {
      const int rank = RankFromChar(c);
      if (rank < 0) {
        throw ParseError("unexpected character '" + std::string(1, c) + "'",
                         pos);
      }
      cards.push_back({hand, kPbnSuitOrder[suit_slot], rank, pos});
      ++hand_sizes[hand];
    }
  }
  if (hand != kNumSeats - 1 || suit_slot != 3) {
    throw ParseError("expected four hands of four suit groups", base + body.size());
  }
  if (cards.size() % kNumSeats != 0) {
    throw ParseError("card count " + std::to_string(cards.size()) +
                         " is not divisible by four",
                     base + body.size());
  }
  const int n = static_cast<int>(cards.size()) / kNumSeats;
  if (n < 3 || n > 13) {
    throw ParseError("unsupported hand size " + std::to_string(n),
                     base + body.size());
  }
  const GameVariant variant = GameVariant::Reduced(n);
  for (int h = 0; h < kNumSeats; ++h) {
    if (hand_sizes[h] != n) {
      throw ParseError("hand " + std::to_string(h + 1) + " holds " +
                           std::to_string(hand_sizes[h]) + " cards, expected " +
                           std::to_string(n),
                       base);
    }
  }

  Deal deal;
  deal.variant = variant;
  deal.dealer = dealer;
  deal.vulnerability = vulnerability;
  CardSet seen = 0;
  for (const Parsed& p : cards) {
    if (p.rank < variant.lowest_rank()) {
      throw ParseError(std::string("rank ") + RankChar(p.rank) +
                           " is outside the " + variant.Name() + " deck",
                       p.pos);
    }
    const CardSet bit = CardSet{1} << Card{p.suit, p.rank}.IndexIn(variant);
    if (seen & bit) {
      throw ParseError("duplicate card " + Card{p.suit, p.rank}.ToString(),
                       p.pos);
    }
    seen |= bit;
    deal.hands[Index(NextSeat(first, p.hand))] |= bit;
  }
  return deal;
}

}  // namespace brl
