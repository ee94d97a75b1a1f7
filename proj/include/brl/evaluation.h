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

// Duplicate matches between two bidders. Every board is bid twice: in room
// 1 A sits NS and B sits EW, in room 2 the seats are swapped. Both rooms
// are scored NS-side from the double-dummy table and the board is worth
// Imps(score_1 - score_2) to A.

#ifndef BRL_EVALUATION_H_
#define BRL_EVALUATION_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "brl/auction.h"
#include "brl/checkpoint.h"
#include "brl/dds.h"
#include "brl/policy.h"

namespace brl {

struct BoardResult {
  std::size_t board = 0;  // index into the record list
  Contract room1_contract;
  int room1_score_ns = 0;
  Contract room2_contract;
  int room2_score_ns = 0;
  int imps = 0;  // for A
};

struct MatchResult {
  std::size_t boards = 0;
  double imps_per_board = 0;
  double standard_error = 0;  // sample stddev / sqrt(n); 0 when n < 2
  std::vector<BoardResult> per_board;
};

// Mean and standard error of the per-board IMPs.
void Summarize(MatchResult& result);

// "+1.24 (±0.19)"
std::string FormatImps(double mean, double standard_error);

// Plays the first `n_boards` records. Throws ConfigError when fewer records
// are available and ContractViolation when the bidders' variants differ
// from the records'.
MatchResult DuplicateMatch(Bidder& a, Bidder& b,
                           const std::vector<DdsRecord>& records,
                           std::size_t n_boards);

// Greedy network bidders for two checkpoints.
MatchResult DuplicateMatch(const Checkpoint& a, const Checkpoint& b,
                           const std::vector<DdsRecord>& records,
                           std::size_t n_boards);

// JSON summary {"boards", "imps_per_board", "standard_error", "summary"}
// and a per-board CSV.
void WriteMatchReport(const MatchResult& result, const std::filesystem::path& json_path,
                      const std::filesystem::path& csv_path);

struct TournamentMatrix {
  std::vector<std::string> labels;
  // imps[i][j]: IMPs/board of checkpoint i against checkpoint j.
  std::vector<std::vector<double>> imps;
  std::vector<std::vector<double>> standard_error;
  // tanh(imps), diagonal 0.
  std::vector<std::vector<double>> scaled;
};

// Plays every unordered pair once on the same boards; the mirrored entry is
// the exact negation since duplicate IMPs are antisymmetric under greedy
// bidding.
TournamentMatrix RoundRobin(
    const std::vector<std::pair<std::string, Checkpoint>>& checkpoints,
    const std::vector<DdsRecord>& records, std::size_t n_boards);

// Square CSV of the scaled matrix (row label, then one column per label) and
// a long table: row,column,imps_per_board,standard_error,tanh.
void WriteTournament(const TournamentMatrix& matrix,
                     const std::filesystem::path& matrix_csv,
                     const std::filesystem::path& long_csv);

// Interactive table: the human bids for `human`, greedy copies of the
// checkpoint bid for the other three seats. Reads one call per line; illegal
// or unreadable calls are rejected with the reason and asked for again.
// Returns the NS score of the board.
int PlayConsole(const Checkpoint& checkpoint, Seat human, const DdsRecord& board,
                std::istream& in, std::ostream& out);

}  // namespace brl

#endif  // BRL_EVALUATION_H_
