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

// A small deterministic rule-based bidder used to generate supervised
// datasets at desk scale. It counts high-card points (A=4 K=3 Q=2 J=1 among
// the ranks the variant keeps) and follows a short opening / response /
// rebid table:
//
//   opening:  12+ points. 1N with a balanced 15-17, else the longest suit
//             (higher-ranking on ties).
//   response: with 6+ points. Raise partner's suit with support (level set
//             by points), answer 1N/2N/3N to partner's notrump by points, or
//             bid a long suit of one's own at the two level or lower.
//   overcall: 10+ points and a long suit, at the two level or lower.
//   rebid:    opener jumps to game with 15+ after a raise, or raises
//             partner's new suit with support.
//
// Every player bids at most twice and the teacher never doubles. Suit
// length thresholds scale with the hand size so the same table works for
// reduced variants.

#ifndef BRL_TEACHER_H_
#define BRL_TEACHER_H_

#include "brl/auction.h"
#include "brl/deals.h"

namespace brl {

struct HandShape {
  int points = 0;
  int lengths[kNumSuits] = {};

  static HandShape Of(const GameVariant& variant, CardSet hand);
  bool Balanced(const GameVariant& variant) const;
  // Longest suit; the higher-ranking suit wins ties.
  Strain LongestSuit() const;
};

// The teacher's call for the seat to act. Always legal.
Call TeacherCall(const Deal& deal, const AuctionState& state);

// Lowest level at which a contract in `strain` scores game, capped at the
// variant's top level.
int GameLevel(Strain strain, const GameVariant& variant);

}  // namespace brl

#endif  // BRL_TEACHER_H_
