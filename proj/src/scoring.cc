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

#include "brl/scoring.h"

#include <algorithm>
#include <cstdlib>

#include "brl/dds.h"

namespace brl {
namespace {

bool IsMinor(Strain s) { return s == Strain::kClubs || s == Strain::kDiamonds; }

int Multiplier(DoubleStatus d) {
  switch (d) {
    case DoubleStatus::kUndoubled:
      return 1;
    case DoubleStatus::kDoubled:
      return 2;
    case DoubleStatus::kRedoubled:
      return 4;
  }
  return 1;
}

int ContractTrickScore(const Contract& c) {
  int base;
  if (c.strain == Strain::kNoTrump) {
    base = 40 + 30 * (c.level - 1);
  } else {
    base = (IsMinor(c.strain) ? 20 : 30) * c.level;
  }
  return base * Multiplier(c.double_status);
}

int UndertrickPenalty(int down, bool vulnerable, DoubleStatus d) {
  if (d == DoubleStatus::kUndoubled) return down * (vulnerable ? 100 : 50);
  int penalty = 0;
  for (int k = 1; k <= down; ++k) {
    if (vulnerable) {
      penalty += k == 1 ? 200 : 300;
    } else {
      penalty += k == 1 ? 100 : (k <= 3 ? 200 : 300);
    }
  }
  return d == DoubleStatus::kRedoubled ? 2 * penalty : penalty;
}

}  // namespace

int ContractScore(const Contract& contract, int tricks_won, bool vulnerable,
                  const GameVariant& variant) {
  if (contract.passed_out) return 0;
  if (tricks_won < 0 || tricks_won > variant.tricks_per_deal()) {
    throw ContractViolation("tricks_won " + std::to_string(tricks_won) +
                            " outside [0, " +
                            std::to_string(variant.tricks_per_deal()) + "]");
  }
  if (contract.level < 1 || contract.level > variant.max_level()) {
    throw ContractViolation("contract level " + std::to_string(contract.level) +
                            " outside the variant");
  }
  const int required = variant.book + contract.level;
  if (tricks_won < required) {
    return -UndertrickPenalty(required - tricks_won, vulnerable,
                              contract.double_status);
  }

  const int trick_score = ContractTrickScore(contract);
  int score = trick_score;
  if (trick_score >= 100) {
    score += vulnerable ? 500 : 300;
  } else {
    score += 50;
  }
  if (contract.level == 6) score += vulnerable ? 750 : 500;
  if (contract.level == 7) score += vulnerable ? 1500 : 1000;

  const int over = tricks_won - required;
  switch (contract.double_status) {
    case DoubleStatus::kUndoubled:
      score += over * (IsMinor(contract.strain) ? 20 : 30);
      break;
    case DoubleStatus::kDoubled:
      score += 50 + over * (vulnerable ? 200 : 100);
      break;
    case DoubleStatus::kRedoubled:
      score += 100 + over * (vulnerable ? 400 : 200);
      break;
  }
  return score;
}

int Imps(int score_difference) {
  const int magnitude = std::abs(score_difference);
  const int imps = static_cast<int>(
      std::upper_bound(kImpThresholds.begin(), kImpThresholds.end(), magnitude) -
      kImpThresholds.begin());
  return score_difference < 0 ? -imps : imps;
}

int MaxAbsScore(const GameVariant& variant) {
  static const std::array<int, 14> kTable = [] {
    std::array<int, 14> table{};
    for (int n = 3; n <= 13; ++n) {
      const GameVariant v = GameVariant::Reduced(n);
      int best = 0;
      for (int level = 1; level <= v.max_level(); ++level) {
        for (Strain strain : kAllStrains) {
          for (DoubleStatus d : {DoubleStatus::kUndoubled, DoubleStatus::kDoubled,
                                 DoubleStatus::kRedoubled}) {
            const Contract c{false, level, strain, Seat::kNorth, d};
            for (bool vul : {false, true}) {
              for (int tricks = 0; tricks <= v.tricks_per_deal(); ++tricks) {
                best = std::max(best, std::abs(ContractScore(c, tricks, vul, v)));
              }
            }
          }
        }
      }
      table[n] = best;
    }
    return table;
  }();
  variant.Validate();
  return kTable[variant.ranks_per_suit];
}

double Reward(int score_ns, Side perspective, const GameVariant& variant) {
  const double z = static_cast<double>(score_ns) / MaxAbsScore(variant);
  return perspective == Side::kNS ? z : -z;
}

int DdsScoreNs(const Contract& contract, const DdsTable& table,
               Vulnerability vulnerability, const GameVariant& variant) {
  if (contract.passed_out) return 0;
  const Side side = SideOf(contract.declarer);
  const int tricks = table.tricks(contract.declarer, contract.strain);
  const int score = ContractScore(contract, tricks,
                                  IsVulnerable(vulnerability, side), variant);
  return side == Side::kNS ? score : -score;
}

}  // namespace brl
