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

#include <gtest/gtest.h>

#include "brl/dds.h"
#include "property_checks.h"

namespace brl {
namespace {

Contract Make(int level, Strain s, DoubleStatus d = DoubleStatus::kUndoubled,
              Seat declarer = Seat::kNorth) {
  return Contract{false, level, s, declarer, d};
}

TEST(ScoringTest, TableOracle) {
  int max_abs = 0;
  const checks::CheckResult r = checks::CheckScoringTable(&max_abs);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(max_abs, 7600);
}

TEST(ScoringTest, KnownScores) {
  EXPECT_EQ(ContractScore(Make(3, Strain::kNoTrump), 9, false), 400);
  EXPECT_EQ(ContractScore(Make(3, Strain::kNoTrump), 9, true), 600);
  EXPECT_EQ(ContractScore(Make(4, Strain::kSpades), 10, false), 420);
  EXPECT_EQ(ContractScore(Make(2, Strain::kHearts), 8, false), 110);
  EXPECT_EQ(ContractScore(Make(1, Strain::kNoTrump, DoubleStatus::kDoubled), 7, false), 180);
  EXPECT_EQ(ContractScore(Make(2, Strain::kClubs, DoubleStatus::kDoubled), 8, false), 180);
  EXPECT_EQ(ContractScore(Make(6, Strain::kHearts), 12, true), 1430);
  EXPECT_EQ(ContractScore(Make(7, Strain::kNoTrump), 13, true), 2220);
  EXPECT_EQ(ContractScore(Make(4, Strain::kSpades), 8, true), -200);
  EXPECT_EQ(ContractScore(Make(4, Strain::kSpades, DoubleStatus::kDoubled), 6, false), -800);
  EXPECT_EQ(ContractScore(Make(7, Strain::kNoTrump, DoubleStatus::kRedoubled), 0, true),
            -7600);
}

TEST(ScoringTest, RejectsBadArguments) {
  EXPECT_EQ(ContractScore(Contract::PassedOut(), 7, false), 0);
  EXPECT_THROW(ContractScore(Make(1, Strain::kClubs), 14, false), ContractViolation);
  EXPECT_THROW(ContractScore(Make(6, Strain::kClubs), 5, false, GameVariant::Reduced(5)),
               ContractViolation);
}

TEST(ImpTest, Table) {
  const checks::CheckResult r = checks::CheckImpTable();
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(Imps(40), 1);
  EXPECT_EQ(Imps(50), 2);
  EXPECT_EQ(Imps(3990), 23);
  EXPECT_EQ(Imps(4000), 24);
  EXPECT_EQ(Imps(400), 9);
  EXPECT_EQ(Imps(-400), -9);
  EXPECT_EQ(Imps(0), 0);
  EXPECT_EQ(Imps(15000), 24);
}

TEST(MaxAbsScoreTest, MatchesEnumeration) {
  EXPECT_EQ(MaxAbsScore(GameVariant::Standard()), 7600);
  EXPECT_EQ(MaxAbsScore(GameVariant::Reduced(5)), oracle::EnumeratedMaxAbs(5, 0));
  EXPECT_EQ(MaxAbsScore(GameVariant::Reduced(5)), 2800);
  for (int n = 3; n <= 12; ++n) {
    EXPECT_EQ(MaxAbsScore(GameVariant::Reduced(n)), oracle::EnumeratedMaxAbs(n, 0)) << n;
  }
}

TEST(ScoringTest, ReducedVariantMatchesTable) {
  for (int n = 3; n <= 12; ++n) {
    const GameVariant v = GameVariant::Reduced(n);
    for (int level = 1; level <= v.max_level(); ++level) {
      for (int strain = 0; strain < 5; ++strain) {
        for (int dbl = 0; dbl < 3; ++dbl) {
          for (int vul = 0; vul < 2; ++vul) {
            for (int t = 0; t <= n; ++t) {
              const Contract c = Make(level, static_cast<Strain>(strain),
                                      static_cast<DoubleStatus>(dbl));
              ASSERT_EQ(ContractScore(c, t, vul != 0, v),
                        oracle::TableScore(level, strain, dbl, vul != 0, t, 0))
                  << n << " " << c.ToString() << " " << t;
            }
          }
        }
      }
    }
  }
}

TEST(RewardTest, BoundedAndSigned) {
  const GameVariant v = GameVariant::Reduced(5);
  EXPECT_DOUBLE_EQ(Reward(2800, Side::kNS, v), 1.0);
  EXPECT_DOUBLE_EQ(Reward(2800, Side::kEW, v), -1.0);
  EXPECT_DOUBLE_EQ(Reward(-700, Side::kNS, v), -0.25);
  EXPECT_DOUBLE_EQ(Reward(0, Side::kEW, v), 0.0);
  EXPECT_DOUBLE_EQ(Reward(7600, Side::kNS, GameVariant::Standard()), 1.0);
}

TEST(DdsScoreTest, SignFollowsDeclarer) {
  const GameVariant v = GameVariant::Reduced(5);
  DdsTable t;
  for (Seat s : kAllSeats) {
    for (Strain st : kAllStrains) t.set(s, st, 3);
  }
  const Contract ns = Make(3, Strain::kNoTrump, DoubleStatus::kUndoubled, Seat::kSouth);
  const Contract ew = Make(3, Strain::kNoTrump, DoubleStatus::kUndoubled, Seat::kEast);
  EXPECT_EQ(DdsScoreNs(ns, t, Vulnerability::kNone, v),
            ContractScore(ns, 3, false, v));
  EXPECT_EQ(DdsScoreNs(ew, t, Vulnerability::kNone, v),
            -ContractScore(ew, 3, false, v));
  EXPECT_EQ(DdsScoreNs(Contract::PassedOut(), t, Vulnerability::kBoth, v), 0);
}

}  // namespace
}  // namespace brl
