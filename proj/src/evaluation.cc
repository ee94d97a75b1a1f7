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

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "brl/io.h"
#include "brl/scoring.h"
#include "json.hpp"

namespace brl {

void Summarize(MatchResult& result) {
  const std::size_t n = result.per_board.size();
  result.boards = n;
  result.imps_per_board = 0;
  result.standard_error = 0;
  if (n == 0) return;
  double sum = 0;
  for (const BoardResult& b : result.per_board) sum += b.imps;
  const double mean = sum / static_cast<double>(n);
  result.imps_per_board = mean;
  if (n < 2) return;
  double ss = 0;
  for (const BoardResult& b : result.per_board) {
    ss += (b.imps - mean) * (b.imps - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  result.standard_error = sd / std::sqrt(static_cast<double>(n));
}

std::string FormatImps(double mean, double standard_error) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.2f (\xC2\xB1%.2f)", mean, standard_error);
  return buf;
}

MatchResult DuplicateMatch(Bidder& a, Bidder& b,
                           const std::vector<DdsRecord>& records,
                           std::size_t n_boards) {
  if (n_boards > records.size()) {
    throw ConfigError("match needs " + std::to_string(n_boards) +
                      " boards but only " + std::to_string(records.size()) +
                      " records are available");
  }
  if (a.variant() != b.variant()) {
    throw ContractViolation("bidders play different variants (" +
                            a.variant().Name() + " vs " + b.variant().Name() + ")");
  }
  std::vector<Deal> deals;
  deals.reserve(n_boards);
  for (std::size_t i = 0; i < n_boards; ++i) deals.push_back(records[i].deal);
  const auto room1 = RunAuctions(deals, {&a, &b, &a, &b});
  const auto room2 = RunAuctions(deals, {&b, &a, &b, &a});
  MatchResult result;
  result.per_board.resize(n_boards);
  for (std::size_t i = 0; i < n_boards; ++i) {
    const DdsRecord& r = records[i];
    BoardResult& br = result.per_board[i];
    br.board = i;
    br.room1_contract = room1[i].FinalContract();
    br.room2_contract = room2[i].FinalContract();
    br.room1_score_ns =
        DdsScoreNs(br.room1_contract, r.table, r.deal.vulnerability, r.deal.variant);
    br.room2_score_ns =
        DdsScoreNs(br.room2_contract, r.table, r.deal.vulnerability, r.deal.variant);
    br.imps = Imps(br.room1_score_ns - br.room2_score_ns);
  }
  Summarize(result);
  return result;
}

MatchResult DuplicateMatch(const Checkpoint& a, const Checkpoint& b,
                           const std::vector<DdsRecord>& records,
                           std::size_t n_boards) {
  NetBidder bidder_a(a);
  NetBidder bidder_b(b);
  return DuplicateMatch(bidder_a, bidder_b, records, n_boards);
}

void WriteMatchReport(const MatchResult& result, const std::filesystem::path& json_path,
                      const std::filesystem::path& csv_path) {
  nlohmann::ordered_json j;
  j["boards"] = result.boards;
  j["imps_per_board"] = result.imps_per_board;
  j["standard_error"] = result.standard_error;
  j["summary"] = FormatImps(result.imps_per_board, result.standard_error);
  WriteFileAtomically(json_path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  WriteFileAtomically(csv_path, [&](std::ostream& out) {
    out << "board,room1_contract,room1_score_ns,room2_contract,room2_score_ns,imps\n";
    for (const BoardResult& b : result.per_board) {
      out << b.board << ',' << CsvField(b.room1_contract.ToString()) << ','
          << b.room1_score_ns << ',' << CsvField(b.room2_contract.ToString()) << ','
          << b.room2_score_ns << ',' << b.imps << '\n';
    }
  });
}

TournamentMatrix RoundRobin(
    const std::vector<std::pair<std::string, Checkpoint>>& checkpoints,
    const std::vector<DdsRecord>& records, std::size_t n_boards) {
  const std::size_t k = checkpoints.size();
  TournamentMatrix m;
  m.imps.assign(k, std::vector<double>(k, 0.0));
  m.standard_error.assign(k, std::vector<double>(k, 0.0));
  m.scaled.assign(k, std::vector<double>(k, 0.0));
  std::vector<NetBidder> bidders;
  bidders.reserve(k);
  for (const auto& [label, ckpt] : checkpoints) {
    m.labels.push_back(label);
    bidders.emplace_back(ckpt);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const MatchResult r = DuplicateMatch(bidders[i], bidders[j], records, n_boards);
      m.imps[i][j] = r.imps_per_board;
      m.imps[j][i] = 0.0 - r.imps_per_board;  // no negative zero
      m.standard_error[i][j] = m.standard_error[j][i] = r.standard_error;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m.scaled[i][j] = i == j ? 0.0 : std::tanh(m.imps[i][j]);
    }
  }
  return m;
}

void WriteTournament(const TournamentMatrix& matrix,
                     const std::filesystem::path& matrix_csv,
                     const std::filesystem::path& long_csv) {
  const std::size_t k = matrix.labels.size();
  WriteFileAtomically(matrix_csv, [&](std::ostream& out) {
    out.precision(6);
    out << "model";
    for (const auto& l : matrix.labels) out << ',' << CsvField(l);
    out << '\n';
    for (std::size_t i = 0; i < k; ++i) {
      out << CsvField(matrix.labels[i]);
      for (std::size_t j = 0; j < k; ++j) out << ',' << matrix.scaled[i][j];
      out << '\n';
    }
  });
  WriteFileAtomically(long_csv, [&](std::ostream& out) {
    out.precision(6);
    out << "row,column,imps_per_board,standard_error,tanh\n";
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        out << CsvField(matrix.labels[i]) << ',' << CsvField(matrix.labels[j]) << ','
            << matrix.imps[i][j] << ',' << matrix.standard_error[i][j] << ','
            << matrix.scaled[i][j] << '\n';
      }
    }
  });
}

int PlayConsole(const Checkpoint& checkpoint, Seat human, const DdsRecord& board,
                std::istream& in, std::ostream& out) {
  const Deal& deal = board.deal;
  const GameVariant& v = deal.variant;
  if (checkpoint.provenance.variant != v) {
    throw ContractViolation("checkpoint variant " +
                            checkpoint.provenance.variant.Name() +
                            " does not match board variant " + v.Name());
  }
  NetBidder bot(checkpoint);
  out << "Dealer " << SeatChar(deal.dealer) << ", vulnerable "
      << VulnerabilityName(deal.vulnerability) << "\n";
  out << "You are " << SeatChar(human) << ": " << FormatHand(v, deal.hand(human))
      << "\n";
  AuctionState state(v, deal.dealer);
  while (!state.IsTerminal()) {
    const Seat seat = state.to_act();
    Call call;
    if (seat == human) {
      for (;;) {
        out << SeatChar(seat) << "> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
          throw DataError("input ended before the auction finished");
        }
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
          line.pop_back();
        }
        try {
          call = Call::Parse(line, v);
        } catch (const DataError& e) {
          out << "rejected: " << e.what() << "\n";
          continue;
        }
        const std::string why = state.WhyIllegal(call);
        if (why.empty()) break;
        out << "rejected: " << why << "\n";
      }
    } else {
      const BidRequest request{&deal, &state};
      bot.Choose(std::span<const BidRequest>(&request, 1), std::span<Call>(&call, 1));
      out << SeatChar(seat) << ": " << call.ToString() << "\n";
    }
    state = state.Apply(call);
  }
  const Contract contract = state.FinalContract();
  const int score = DdsScoreNs(contract, board.table, deal.vulnerability, v);
  out << "Contract: " << contract.ToString() << "\n";
  if (!contract.passed_out) {
    out << "Double-dummy tricks for declarer: "
        << board.table.tricks(contract.declarer, contract.strain) << " of "
        << v.tricks_per_deal() << "\n";
  }
  out << "Score (NS): " << score << "\n";
  out << "Deal: " << FormatDeal(deal) << "\n";
  return score;
}

}  // namespace brl
