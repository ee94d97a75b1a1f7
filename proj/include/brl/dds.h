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

// Double-dummy trick tables.
//
// Reduced decks (N <= 7) are solved exhaustively with alpha-beta search.
// Standard deals are not solved here; their tables come from precomputed
// datasets in the JSONL format below:
//
//   {"deal": "N:...", "dealer": "N", "vul": "None", "dds": [20 ints]}
//
// with "dds" in declarer-major order N,E,S,W, each over strains C,D,H,S,NT.

#ifndef BRL_DDS_H_
#define BRL_DDS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "brl/common.h"
#include "brl/deals.h"

namespace brl {

inline constexpr int kMaxSolvableRanks = 7;

struct DdsTable {
  std::array<std::uint8_t, kNumSeats * kNumStrains> entries{};

  int tricks(Seat declarer, Strain strain) const {
    return entries[Index(declarer) * kNumStrains + Index(strain)];
  }
  void set(Seat declarer, Strain strain, int tricks) {
    entries[Index(declarer) * kNumStrains + Index(strain)] =
        static_cast<std::uint8_t>(tricks);
  }

  friend bool operator==(const DdsTable&, const DdsTable&) = default;
};

struct DdsRecord {
  Deal deal;
  DdsTable table;

  friend bool operator==(const DdsRecord&, const DdsRecord&) = default;
};

struct SolverOptions {
  bool alpha_beta = true;
  bool transposition_table = true;
  bool rank_equivalence = true;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t tt_hits = 0;
};

// Tricks won by `side` when `leader` makes the opening lead and both sides
// play perfectly with all hands visible. Throws CapabilityError for N > 7.
int SolveTricks(const Deal& deal, Strain trump, Seat leader, Side side,
                const SolverOptions& options = {}, SolverStats* stats = nullptr);

// Tricks taken by the declaring side, opening lead from declarer's
// left-hand opponent.
int SolveDoubleDummy(const Deal& deal, Strain trump, Seat declarer,
                     const SolverOptions& options = {},
                     SolverStats* stats = nullptr);

DdsTable FullTable(const Deal& deal, const SolverOptions& options = {});

// Thread-safe memo of full tables keyed by the hands of a deal.
class DdsTableCache {
 public:
  DdsTable Get(const Deal& deal);
  std::size_t size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::array<CardSet, kNumSeats>& k) const;
  };
  mutable std::mutex mu_;
  std::unordered_map<std::array<CardSet, kNumSeats>, DdsTable, KeyHash> tables_;
};

std::string FormatDdsRecord(const DdsRecord& record);
// `line` is used in diagnostics only.
DdsRecord ParseDdsRecord(std::string_view text, long line = 0);

// Loads and validates every line. Blank lines are rejected except for a
// final trailing newline. All records must share one variant.
std::vector<DdsRecord> LoadDdsDataset(const std::filesystem::path& path);
// Writes atomically (temporary file, then rename).
void StoreDdsDataset(const std::vector<DdsRecord>& records,
                     const std::filesystem::path& path);

struct DdsMismatch {
  std::size_t record = 0;  // 0-based
  Seat declarer = Seat::kNorth;
  Strain strain = Strain::kClubs;
  int stored = 0;
  int solved = 0;
};

// Recomputes every table with the solver. Requires N <= 7.
std::vector<DdsMismatch> VerifyDdsRecords(const std::vector<DdsRecord>& records);

}  // namespace brl

#endif  // BRL_DDS_H_
