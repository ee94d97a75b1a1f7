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

#include "brl/dds.h"

#include <algorithm>
#include <bit>
#include <limits>

#include "brl/io.h"
#include "json.hpp"

namespace brl {
namespace {

// Alpha-beta over the card play. Values are tricks won by North-South from
// the current node to the end of the deal; East-West minimises.
//
// The transposition table is probed only at trick boundaries, keyed by the
// set of cards still held, the player on lead and the trump strain. Since
// the holdings of every card are fixed by the deal, the remaining set
// determines the position completely.
class TrickSolver {
 public:
  TrickSolver(const Deal& deal, Strain trump, const SolverOptions& options,
              SolverStats* stats)
      : n_(deal.variant.ranks_per_suit),
        trump_(Index(trump)),
        options_(options),
        stats_(stats) {
    for (int s = 0; s < kNumSeats; ++s) hands_[s] = deal.hands[s];
    for (int s = 0; s < kNumSuits; ++s) {
      suit_masks_[s] = SuitMask(deal.variant, static_cast<Suit>(s));
    }
    if (options_.transposition_table) tt_.reserve(1 << 12);
  }

  int NorthSouthTricks(Seat leader) {
    return Boundary(Index(leader), 0, std::numeric_limits<int>::max() / 2);
  }

 private:
  struct Bounds {
    std::int8_t lower;
    std::int8_t upper;
  };
  struct Trick {
    int leader;
    int cards[kNumSeats];
  };

  int SuitOf(int card) const { return card / n_; }

  int Boundary(int leader, int alpha, int beta) {
    const int remaining = std::popcount(hands_[leader]);
    if (remaining == 0) return 0;
    if (options_.alpha_beta) {
      if (beta <= 0) return 0;
      if (alpha >= remaining) return remaining;
    }
    std::uint64_t key = 0;
    Bounds* entry = nullptr;
    if (options_.transposition_table) {
      const CardSet all = hands_[0] | hands_[1] | hands_[2] | hands_[3];
      key = all | (std::uint64_t(leader) << 56) | (std::uint64_t(trump_) << 59);
      auto [it, inserted] =
          tt_.try_emplace(key, Bounds{0, static_cast<std::int8_t>(remaining)});
      entry = &it->second;
      if (!inserted) {
        if (stats_) ++stats_->tt_hits;
        if (entry->lower == entry->upper) return entry->lower;
        if (options_.alpha_beta) {
          if (entry->lower >= beta) return entry->lower;
          if (entry->upper <= alpha) return entry->upper;
          alpha = std::max(alpha, static_cast<int>(entry->lower));
          beta = std::min(beta, static_cast<int>(entry->upper));
        }
      }
    }
    Trick trick{leader, {-1, -1, -1, -1}};
    const int value = Play(trick, 0, alpha, beta);
    if (entry != nullptr) {
      // `entry` may have been invalidated by rehashing inside Play.
      Bounds& b = tt_[key];
      if (!options_.alpha_beta || (value > alpha && value < beta)) {
        b.lower = b.upper = static_cast<std::int8_t>(value);
      } else if (value <= alpha) {
        b.upper = std::min<std::int8_t>(b.upper, static_cast<std::int8_t>(value));
      } else {
        b.lower = std::max<std::int8_t>(b.lower, static_cast<std::int8_t>(value));
      }
    }
    return value;
  }

  int Winner(const Trick& t) const {
    int best = 0;
    for (int i = 1; i < kNumSeats; ++i) {
      const int c = t.cards[i];
      const int b = t.cards[best];
      const int cs = SuitOf(c);
      const int bs = SuitOf(b);
      if (cs == bs) {
        if (c > b) best = i;
      } else if (cs == trump_ && bs != trump_) {
        best = i;
      }
    }
    return (t.leader + best) % kNumSeats;
  }

  CardSet Candidates(int seat, const Trick& t, int pos) const {
    CardSet hand = hands_[seat];
    if (pos > 0) {
      const CardSet follow = hand & suit_masks_[SuitOf(t.cards[0])];
      if (follow) hand = follow;
    }
    if (!options_.rank_equivalence) return hand;
    // Keep the highest card of each run of cards that no other live card
    // separates. Cards on the table in this trick count as live.
    CardSet live = hands_[0] | hands_[1] | hands_[2] | hands_[3];
    for (int i = 0; i < pos; ++i) live |= CardSet{1} << t.cards[i];
    CardSet keep = 0;
    for (int s = 0; s < kNumSuits; ++s) {
      if (!(hand & suit_masks_[s])) continue;
      bool in_run = false;
      for (int c = n_ * (s + 1) - 1; c >= n_ * s; --c) {
        const CardSet bit = CardSet{1} << c;
        if (!(live & bit)) continue;
        if (hand & bit) {
          if (!in_run) keep |= bit;
          in_run = true;
        } else {
          in_run = false;
        }
      }
    }
    return keep;
  }

  int Play(Trick& t, int pos, int alpha, int beta) {
    if (stats_) ++stats_->nodes;
    if (pos == kNumSeats) {
      const int winner = Winner(t);
      const int won = (winner & 1) == 0 ? 1 : 0;
      return won + Boundary(winner, alpha - won, beta - won);
    }
    const int seat = (t.leader + pos) % kNumSeats;
    const bool maximizing = (seat & 1) == 0;
    CardSet moves = Candidates(seat, t, pos);
    int best = maximizing ? -1 : std::numeric_limits<int>::max();
    while (moves) {
      const int card = 63 - std::countl_zero(moves);
      const CardSet bit = CardSet{1} << card;
      moves &= ~bit;
      hands_[seat] &= ~bit;
      t.cards[pos] = card;
      const int v = Play(t, pos + 1, alpha, beta);
      hands_[seat] |= bit;
      if (maximizing) {
        best = std::max(best, v);
        alpha = std::max(alpha, v);
      } else {
        best = std::min(best, v);
        beta = std::min(beta, v);
      }
      if (options_.alpha_beta && alpha >= beta) break;
    }
    return best;
  }

  const int n_;
  const int trump_;  // 0..3, 4 = no trump
  const SolverOptions options_;
  SolverStats* stats_;
  CardSet hands_[kNumSeats];
  CardSet suit_masks_[kNumSuits];
  std::unordered_map<std::uint64_t, Bounds> tt_;
};

void CheckSolvable(const Deal& deal) {
  if (deal.variant.ranks_per_suit > kMaxSolvableRanks) {
    throw CapabilityError(
        "exhaustive double-dummy search supports at most " +
        std::to_string(kMaxSolvableRanks) +
        " ranks per suit; load precomputed tables for " + deal.variant.Name() +
        " deals");
  }
  if (!deal.IsValid()) throw ContractViolation("invalid deal");
}

using json = nlohmann::ordered_json;

}  // namespace

int SolveTricks(const Deal& deal, Strain trump, Seat leader, Side side,
                const SolverOptions& options, SolverStats* stats) {
  CheckSolvable(deal);
  TrickSolver solver(deal, trump, options, stats);
  const int ns = solver.NorthSouthTricks(leader);
  return side == Side::kNS ? ns : deal.variant.tricks_per_deal() - ns;
}

int SolveDoubleDummy(const Deal& deal, Strain trump, Seat declarer,
                     const SolverOptions& options, SolverStats* stats) {
  return SolveTricks(deal, trump, NextSeat(declarer), SideOf(declarer), options,
                     stats);
}

DdsTable FullTable(const Deal& deal, const SolverOptions& options) {
  CheckSolvable(deal);
  DdsTable table;
  const int n = deal.variant.tricks_per_deal();
  for (Strain strain : kAllStrains) {
    // One table per strain, shared across the four opening leaders.
    TrickSolver solver(deal, strain, options, nullptr);
    for (Seat declarer : kAllSeats) {
      const int ns = solver.NorthSouthTricks(NextSeat(declarer));
      table.set(declarer, strain, SideOf(declarer) == Side::kNS ? ns : n - ns);
    }
  }
  return table;
}

std::size_t DdsTableCache::KeyHash::operator()(
    const std::array<CardSet, kNumSeats>& k) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (CardSet c : k) {
    h ^= c + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

DdsTable DdsTableCache::Get(const Deal& deal) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(deal.hands);
    if (it != tables_.end()) return it->second;
  }
  const DdsTable table = FullTable(deal);
  std::lock_guard<std::mutex> lock(mu_);
  tables_.emplace(deal.hands, table);
  return table;
}

std::size_t DdsTableCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tables_.size();
}

std::string FormatDdsRecord(const DdsRecord& record) {
  json j;
  j["deal"] = FormatDeal(record.deal);
  j["dealer"] = std::string(1, SeatChar(record.deal.dealer));
  j["vul"] = VulnerabilityName(record.deal.vulnerability);
  json dds = json::array();
  for (auto t : record.table.entries) dds.push_back(static_cast<int>(t));
  j["dds"] = std::move(dds);
  return j.dump();
}

DdsRecord ParseDdsRecord(std::string_view text, long line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what(), line);
  }
  try {
    if (!j.is_object()) throw DataError("record is not a JSON object", line);
    for (const char* field : {"deal", "dealer", "vul", "dds"}) {
      if (!j.contains(field)) {
        throw DataError(std::string("missing field '") + field + "'", line);
      }
    }
    DdsRecord record;
    record.deal = ParseDeal(j.at("deal").get<std::string>(),
                            ParseSeat(j.at("dealer").get<std::string>()),
                            ParseVulnerability(j.at("vul").get<std::string>()));
    const json& dds = j.at("dds");
    if (!dds.is_array() || dds.size() != record.table.entries.size()) {
      throw DataError("'dds' must be an array of 20 integers", line);
    }
    const int n = record.deal.variant.tricks_per_deal();
    for (std::size_t i = 0; i < dds.size(); ++i) {
      if (!dds[i].is_number_integer()) {
        throw DataError("'dds' entry " + std::to_string(i) + " is not an integer",
                        line);
      }
      const int v = dds[i].get<int>();
      if (v < 0 || v > n) {
        throw DataError("'dds' entry " + std::to_string(i) + " = " +
                            std::to_string(v) + " outside [0, " +
                            std::to_string(n) + "]",
                        line);
      }
      record.table.entries[i] = static_cast<std::uint8_t>(v);
    }
    return record;
  } catch (const DataError& e) {
    if (e.line() > 0 || line == 0) throw;
    throw DataError(e.what(), line);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad field type: ") + e.what(), line);
  }
}

std::vector<DdsRecord> LoadDdsDataset(const std::filesystem::path& path) {
  const std::vector<std::string> lines = ReadLines(path);
  std::vector<DdsRecord> records;
  records.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const long line_no = static_cast<long>(i) + 1;
    if (lines[i].empty()) {
      throw DataError("empty line", line_no);
    }
    records.push_back(ParseDdsRecord(lines[i], line_no));
    if (records.back().deal.variant != records.front().deal.variant) {
      throw DataError("variant " + records.back().deal.variant.Name() +
                          " differs from the first record's " +
                          records.front().deal.variant.Name(),
                      line_no);
    }
  }
  return records;
}

void StoreDdsDataset(const std::vector<DdsRecord>& records,
                     const std::filesystem::path& path) {
  WriteFileAtomically(path, [&](std::ostream& out) {
    for (const DdsRecord& r : records) out << FormatDdsRecord(r) << '\n';
  });
}

std::vector<DdsMismatch> VerifyDdsRecords(const std::vector<DdsRecord>& records) {
  std::vector<DdsMismatch> mismatches;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DdsTable solved = FullTable(records[i].deal);
    for (Seat d : kAllSeats) {
      for (Strain s : kAllStrains) {
        if (solved.tricks(d, s) != records[i].table.tricks(d, s)) {
          mismatches.push_back(
              {i, d, s, records[i].table.tricks(d, s), solved.tricks(d, s)});
        }
      }
    }
  }
  return mismatches;
}

}  // namespace brl
