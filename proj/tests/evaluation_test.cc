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

#include "brl/evaluation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "brl/io.h"
#include "brl/scoring.h"
#include "json.hpp"

namespace brl {
namespace {

const GameVariant kN5 = GameVariant::Reduced(5);

const std::vector<DdsRecord>& Boards() {
  static const std::vector<DdsRecord> records = [] {
    std::vector<DdsRecord> r;
    for (int b = 1; b <= 60; ++b) {
      const Deal d = GenerateDeal(77, kN5, b);
      r.push_back({d, FullTable(d)});
    }
    return r;
  }();
  return records;
}

Checkpoint PassingCheckpoint() {
  Checkpoint c = InitialCheckpoint(kN5, 8, 1, 0);
  c.params.policy.bias(Call::kPass) = 60.0f;
  return c;
}

// Opens `opening` with the first NS seat to act and passes otherwise.
FunctionBidder OpenAs(Call opening) {
  return FunctionBidder(kN5, [opening](const Deal&, const AuctionState& s) {
    const bool bid_yet = s.highest_bid().has_value();
    if (SideOf(s.to_act()) == Side::kNS && !bid_yet) return opening;
    return Call::Pass();
  });
}

TEST(DuplicateMatchTest, SelfMatchIsZeroOnEveryBoard) {
  const Checkpoint c = InitialCheckpoint(kN5, 16, 2, 4);
  const MatchResult m = DuplicateMatch(c, c, Boards(), 60);
  ASSERT_EQ(m.per_board.size(), 60u);
  for (const BoardResult& b : m.per_board) {
    EXPECT_EQ(b.imps, 0);
    EXPECT_EQ(b.room1_score_ns, b.room2_score_ns);
  }
  EXPECT_EQ(m.imps_per_board, 0.0);
  EXPECT_EQ(m.standard_error, 0.0);
}

TEST(DuplicateMatchTest, BothRoomsPassedOut) {
  FunctionBidder a(kN5, [](const Deal&, const AuctionState&) { return Call::Pass(); });
  FunctionBidder b(kN5, [](const Deal&, const AuctionState&) { return Call::Pass(); });
  const MatchResult m = DuplicateMatch(a, b, Boards(), 20);
  for (const BoardResult& r : m.per_board) {
    EXPECT_TRUE(r.room1_contract.passed_out);
    EXPECT_TRUE(r.room2_contract.passed_out);
    EXPECT_EQ(r.imps, 0);
  }
}

TEST(DuplicateMatchTest, GameAgainstPartScore) {
  // Find a board where the first NS seat to speak makes 3NT.
  std::size_t index = 0;
  Seat declarer = Seat::kNorth;
  bool found = false;
  for (; index < Boards().size() && !found; ++index) {
    const Deal& d = Boards()[index].deal;
    declarer = SideOf(d.dealer) == Side::kNS ? d.dealer : NextSeat(d.dealer);
    found = Boards()[index].table.tricks(declarer, Strain::kNoTrump) >= 3;
  }
  ASSERT_TRUE(found);
  --index;
  const DdsRecord& rec = Boards()[index];
  std::vector<DdsRecord> one{rec};
  FunctionBidder game = OpenAs(Call::Bid(3, Strain::kNoTrump));
  FunctionBidder part = OpenAs(Call::Bid(1, Strain::kNoTrump));
  const MatchResult m = DuplicateMatch(game, part, one, 1);
  const bool vul = IsVulnerable(rec.deal.vulnerability, Side::kNS);
  const int tricks = rec.table.tricks(declarer, Strain::kNoTrump);
  const int game_score =
      ContractScore({false, 3, Strain::kNoTrump, declarer, DoubleStatus::kUndoubled},
                    tricks, vul, kN5);
  const int part_score =
      ContractScore({false, 1, Strain::kNoTrump, declarer, DoubleStatus::kUndoubled},
                    tricks, vul, kN5);
  EXPECT_EQ(m.per_board[0].room1_score_ns, game_score);
  EXPECT_EQ(m.per_board[0].room2_score_ns, part_score);
  EXPECT_GT(game_score - part_score, 0);
  EXPECT_EQ(m.per_board[0].imps, Imps(game_score - part_score));
  EXPECT_EQ(m.imps_per_board, Imps(game_score - part_score));
}

TEST(DuplicateMatchTest, AntisymmetricAndReproducible) {
  const Checkpoint a = InitialCheckpoint(kN5, 16, 2, 5);
  const Checkpoint b = InitialCheckpoint(kN5, 16, 2, 6);
  const MatchResult ab = DuplicateMatch(a, b, Boards(), 60);
  const MatchResult ba = DuplicateMatch(b, a, Boards(), 60);
  const MatchResult again = DuplicateMatch(a, b, Boards(), 60);
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_EQ(ab.per_board[i].imps, -ba.per_board[i].imps);
    EXPECT_EQ(ab.per_board[i].imps, again.per_board[i].imps);
  }
  EXPECT_EQ(ab.imps_per_board, -ba.imps_per_board);
  EXPECT_EQ(ab.standard_error, ba.standard_error);
}

TEST(DuplicateMatchTest, Errors) {
  const Checkpoint c = InitialCheckpoint(kN5, 8, 1, 0);
  EXPECT_THROW(DuplicateMatch(c, c, Boards(), 61), ConfigError);
  const Checkpoint other = InitialCheckpoint(GameVariant::Reduced(4), 8, 1, 0);
  EXPECT_THROW(DuplicateMatch(other, other, Boards(), 2), ContractViolation);
}

TEST(SummarizeTest, StandardErrorFormula) {
  MatchResult m;
  const std::vector<int> imps{3, -1, 0, 7, -4, 2};
  for (int v : imps) {
    BoardResult b;
    b.imps = v;
    m.per_board.push_back(b);
  }
  Summarize(m);
  const double mean = 7.0 / 6.0;
  double ss = 0;
  for (int v : imps) ss += (v - mean) * (v - mean);
  EXPECT_EQ(m.boards, 6u);
  EXPECT_NEAR(m.imps_per_board, mean, 1e-12);
  EXPECT_NEAR(m.standard_error, std::sqrt(ss / 5) / std::sqrt(6.0), 1e-12);
  MatchResult single;
  single.per_board.resize(1);
  single.per_board[0].imps = 5;
  Summarize(single);
  EXPECT_EQ(single.standard_error, 0.0);
}

TEST(FormatImpsTest, SignAndPrecision) {
  EXPECT_EQ(FormatImps(1.244, 0.19), "+1.24 (±0.19)");
  EXPECT_EQ(FormatImps(-0.5, 0.1), "-0.50 (±0.10)");
  EXPECT_EQ(FormatImps(0, 0), "+0.00 (±0.00)");
}

TEST(RoundRobinTest, IdenticalCheckpointsGiveZeroMatrix) {
  const Checkpoint c = InitialCheckpoint(kN5, 16, 2, 9);
  const TournamentMatrix t = RoundRobin({{"a", c}, {"b", c}, {"c", c}}, Boards(), 30);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(t.imps[i][j], 0.0);
      EXPECT_EQ(t.scaled[i][j], 0.0);
    }
  }
}

TEST(RoundRobinTest, MatchesPairwiseMatches) {
  std::vector<std::pair<std::string, Checkpoint>> cps;
  for (int k = 0; k < 3; ++k) {
    cps.emplace_back("net" + std::to_string(k), InitialCheckpoint(kN5, 16, 2, 20 + k));
  }
  const TournamentMatrix t = RoundRobin(cps, Boards(), 40);
  ASSERT_EQ(t.labels.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(t.imps[i][i], 0.0);
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      // Played directly, in this orientation.
      const MatchResult m = DuplicateMatch(cps[i].second, cps[j].second, Boards(), 40);
      EXPECT_DOUBLE_EQ(t.imps[i][j], m.imps_per_board) << i << "," << j;
      EXPECT_DOUBLE_EQ(t.standard_error[i][j], m.standard_error);
      EXPECT_DOUBLE_EQ(t.scaled[i][j], std::tanh(m.imps_per_board));
    }
  }
}

TEST(ReportTest, FilesAreWritten) {
  const auto dir = std::filesystem::temp_directory_path() / "brl_eval_test";
  std::filesystem::create_directories(dir);
  const Checkpoint a = InitialCheckpoint(kN5, 8, 1, 1);
  const Checkpoint b = InitialCheckpoint(kN5, 8, 1, 2);
  const MatchResult m = DuplicateMatch(a, b, Boards(), 10);
  WriteMatchReport(m, dir / "m.json", dir / "m.csv");
  const auto j = nlohmann::json::parse(ReadFile(dir / "m.json"));
  EXPECT_EQ(j["boards"], 10);
  EXPECT_EQ(j["summary"], FormatImps(m.imps_per_board, m.standard_error));
  EXPECT_EQ(ReadLines(dir / "m.csv").size(), 11u);

  const TournamentMatrix t = RoundRobin({{"a", a}, {"b", b}}, Boards(), 10);
  WriteTournament(t, dir / "t.csv", dir / "t_long.csv");
  EXPECT_EQ(ReadLines(dir / "t.csv").size(), 3u);
  EXPECT_EQ(ReadLines(dir / "t_long.csv").size(), 5u);
  std::filesystem::remove_all(dir);
}

TEST(PlayConsoleTest, PassOutScoresZero) {
  const Checkpoint c = PassingCheckpoint();
  std::istringstream in("P\n");
  std::ostringstream out;
  EXPECT_EQ(PlayConsole(c, Seat::kSouth, Boards()[0], in, out), 0);
  EXPECT_NE(out.str().find("Passed out"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("Score (NS): 0"), std::string::npos) << out.str();
}

TEST(PlayConsoleTest, RejectsIllegalAndUnreadableCalls) {
  const Checkpoint c = PassingCheckpoint();
  std::istringstream in("XX\nhello\n9S\n1H\nP\n");
  std::ostringstream out;
  const DdsRecord& rec = Boards()[0];
  const int score = PlayConsole(c, Seat::kSouth, rec, in, out);
  const std::string text = out.str();
  std::size_t rejections = 0;
  for (std::size_t p = text.find("rejected"); p != std::string::npos;
       p = text.find("rejected", p + 1)) {
    ++rejections;
  }
  EXPECT_EQ(rejections, 3u) << text;
  const bool vul = IsVulnerable(rec.deal.vulnerability, Side::kNS);
  EXPECT_EQ(score, ContractScore({false, 1, Strain::kHearts, Seat::kSouth,
                                  DoubleStatus::kUndoubled},
                                 rec.table.tricks(Seat::kSouth, Strain::kHearts), vul, kN5));
}

TEST(PlayConsoleTest, ReplayIsDeterministic) {
  const Checkpoint c = InitialCheckpoint(kN5, 16, 2, 3);
  std::string first;
  for (int k = 0; k < 2; ++k) {
    std::istringstream in("P\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\nP\n");
    std::ostringstream out;
    PlayConsole(c, Seat::kWest, Boards()[3], in, out);
    if (k == 0) first = out.str();
    else EXPECT_EQ(out.str(), first);
  }
  std::istringstream empty("");
  std::ostringstream sink;
  EXPECT_THROW(PlayConsole(c, Boards()[0].deal.dealer, Boards()[0], empty, sink), DataError);
}

}  // namespace
}  // namespace brl
