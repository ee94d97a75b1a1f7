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

// Duplicate bridge scoring and IMP conversion.
//
// Source tables: the ACBL/WBF Laws of Duplicate Bridge (2017), Law 77
// (duplicate scoring table) and Law 78B (IMP scale). Only duplicate scoring
// is supported; honors and rubber bonuses are not.
//
// Reduced decks reuse the same table with the variant's book: a contract of
// level L makes with at least book + L tricks. Slam bonuses are keyed on the
// absolute level (6 or 7) and therefore never arise when max_level < 6.

#ifndef BRL_SCORING_H_
#define BRL_SCORING_H_

#include <array>

#include "brl/auction.h"
#include "brl/common.h"

namespace brl {

// Duplicate score from the declaring side's point of view. PassedOut
// scores 0. Throws ContractViolation when tricks_won is outside [0, N].
int ContractScore(const Contract& contract, int tricks_won, bool vulnerable,
                  const GameVariant& variant = GameVariant::Standard());

// Law 78B band lower bounds; imps(d) = number of bounds <= |d|.
inline constexpr std::array<int, 24> kImpThresholds = {
    20,   50,   90,   130,  170,  220,  270,  320,  370,  430,  500,  600,
    750,  900,  1100, 1300, 1500, 1750, 2000, 2250, 2500, 3000, 3500, 4000};

int Imps(int score_difference);

// Largest |ContractScore| over every (level, strain, doubling,
// vulnerability, tricks) of the variant, found by enumeration. 7600 for
// the standard deck.
int MaxAbsScore(const GameVariant& variant);

// score_ns / MaxAbsScore, sign-flipped for the EW perspective.
double Reward(int score_ns, Side perspective, const GameVariant& variant);

struct DdsTable;

// NS-perspective score of `contract` when declarer takes the double-dummy
// number of tricks in the table.
int DdsScoreNs(const Contract& contract, const DdsTable& table,
               Vulnerability vulnerability, const GameVariant& variant);

}  // namespace brl

#endif  // BRL_SCORING_H_
