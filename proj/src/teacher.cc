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

#include "brl/teacher.h"

#include <algorithm>
#include <bit>
#include <optional>

namespace brl {
namespace {

// Suit length counted as "long" (5 at N=13) and as "support" (3 at N=13).
int LongLength(const GameVariant& v) {
  return std::max(2, (5 * v.cards_per_hand() + 6) / 13);
}
int SupportLength(const GameVariant& v) {
  return std::max(2, (3 * v.cards_per_hand() + 6) / 13);
}

// Cheapest legal bid in `strain`, or nullopt above the top level.
std::optional<Call> CheapestBid(const AuctionState& state, Strain strain) {
  const int max_level = state.variant().max_level();
  const auto high = state.highest_bid();
  for (int level = 1; level <= max_level; ++level) {
    const Call c = Call::Bid(level, strain);
    if (!high || c.index() > high->index()) return c;
  }
  return std::nullopt;
}

// `strain` at the higher of `level` and the cheapest legal level, if that
// is still within `ceiling`.
Call BidAtLeast(const AuctionState& state, Strain strain, int level,
                int ceiling) {
  const auto cheapest = CheapestBid(state, strain);
  if (!cheapest) return Call::Pass();
  const int target = std::max(level, cheapest->level());
  if (target > std::min(ceiling, state.variant().max_level())) {
    return Call::Pass();
  }
  return Call::Bid(target, strain);
}

struct Summary {
  bool any_bid = false;
  int my_bids = 0;
  std::optional<Call> my_last;
  std::optional<Call> partner_last;
};

Summary Summarize(const AuctionState& state) {
  Summary s;
  const Seat me = state.to_act();
  const auto& history = state.history();
  for (std::size_t i = 0; i < history.size(); ++i) {
    const Call c = history[i];
    if (!c.is_bid()) continue;
    const Seat who = state.SeatOfCall(i);
    s.any_bid = true;
    if (who == me) {
      ++s.my_bids;
      s.my_last = c;
    } else if (who == Partner(me)) {
      s.partner_last = c;
    }
  }
  return s;
}

Call Opening(const GameVariant& v, const HandShape& h) {
  if (h.points < 12) return Call::Pass();
  if (h.Balanced(v) && h.points >= 15 && h.points <= 17) {
    return Call::Bid(1, Strain::kNoTrump);
  }
  return Call::Bid(1, h.LongestSuit());
}

Call Response(const AuctionState& state, const HandShape& h, Call partner) {
  const GameVariant& v = state.variant();
  if (h.points < 6) return Call::Pass();
  const Strain ps = partner.strain();
  if (ps == Strain::kNoTrump) {
    const int level = h.points >= 10 ? 3 : (h.points >= 8 ? 2 : 0);
    if (level == 0) return Call::Pass();
    return BidAtLeast(state, Strain::kNoTrump, level, level);
  }
  if (h.lengths[Index(ps)] >= SupportLength(v)) {
    const int level = h.points >= 13   ? GameLevel(ps, v)
                      : h.points >= 10 ? 3
                                       : 2;
    return BidAtLeast(state, ps, level, level);
  }
  const Strain mine = h.LongestSuit();
  if (h.lengths[Index(mine)] >= LongLength(v)) {
    return BidAtLeast(state, mine, 1, 2);
  }
  return Call::Pass();
}

Call Overcall(const AuctionState& state, const HandShape& h) {
  const GameVariant& v = state.variant();
  if (h.points < 10) return Call::Pass();
  const Strain mine = h.LongestSuit();
  if (h.lengths[Index(mine)] < LongLength(v)) return Call::Pass();
  return BidAtLeast(state, mine, 1, 2);
}

Call Rebid(const AuctionState& state, const HandShape& h, Call mine,
           Call partner) {
  const GameVariant& v = state.variant();
  const Strain ps = partner.strain();
  if (ps == mine.strain()) {
    if (h.points < 15 || ps == Strain::kNoTrump) return Call::Pass();
    const int game = GameLevel(ps, v);
    return BidAtLeast(state, ps, game, game);
  }
  if (ps != Strain::kNoTrump && h.lengths[Index(ps)] >= SupportLength(v)) {
    return BidAtLeast(state, ps, 1, 3);
  }
  return Call::Pass();
}

}  // namespace

HandShape HandShape::Of(const GameVariant& v, CardSet hand) {
  HandShape h;
  for (int s = 0; s < kNumSuits; ++s) {
    const CardSet cards = hand & SuitMask(v, static_cast<Suit>(s));
    h.lengths[s] = CountCards(cards);
  }
  CardSet rest = hand;
  while (rest) {
    const int index = std::countr_zero(rest);
    rest &= rest - 1;
    const int rank = Card::FromIndex(index, v).rank;
    if (rank >= 11) h.points += rank - 10;
  }
  return h;
}

bool HandShape::Balanced(const GameVariant& v) const {
  const int n = v.cards_per_hand();
  const auto [lo, hi] = std::minmax_element(lengths, lengths + kNumSuits);
  return *lo >= std::max(1, n / 6) && *hi <= (n + 3) / 4 + 1;
}

Strain HandShape::LongestSuit() const {
  int best = kNumSuits - 1;
  for (int s = kNumSuits - 2; s >= 0; --s) {
    if (lengths[s] > lengths[best]) best = s;
  }
  return static_cast<Strain>(best);
}

int GameLevel(Strain strain, const GameVariant& variant) {
  const int level = strain == Strain::kNoTrump ? 3
                    : (strain == Strain::kHearts || strain == Strain::kSpades)
                        ? 4
                        : 5;
  return std::min(level, variant.max_level());
}

Call TeacherCall(const Deal& deal, const AuctionState& state) {
  const GameVariant& v = state.variant();
  const Seat me = state.to_act();
  const HandShape h = HandShape::Of(v, deal.hand(me));
  const Summary s = Summarize(state);
  Call call = Call::Pass();
  if (!s.any_bid) {
    call = Opening(v, h);
  } else if (s.my_bids >= 2) {
    call = Call::Pass();
  } else if (s.my_bids == 0) {
    call = s.partner_last ? Response(state, h, *s.partner_last)
                          : Overcall(state, h);
  } else if (s.partner_last) {
    call = Rebid(state, h, *s.my_last, *s.partner_last);
  }
  return state.IsLegal(call) ? call : Call::Pass();
}

}  // namespace brl
