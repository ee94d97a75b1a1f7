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

#ifndef BRL_AUCTION_H_
#define BRL_AUCTION_H_

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brl/common.h"

namespace brl {

// A call is Pass (0), Double (1), Redouble (2) or a bid
// 3 + 5 * (level - 1) + strain. Bid indices increase with precedence.
class Call {
 public:
  static constexpr int kPass = 0;
  static constexpr int kDouble = 1;
  static constexpr int kRedouble = 2;
  static constexpr int kFirstBid = 3;

  constexpr Call() = default;
  constexpr explicit Call(int index) : index_(index) {}

  static constexpr Call Pass() { return Call(kPass); }
  static constexpr Call Double() { return Call(kDouble); }
  static constexpr Call Redouble() { return Call(kRedouble); }
  static constexpr Call Bid(int level, Strain strain) {
    return Call(kFirstBid + kNumStrains * (level - 1) + Index(strain));
  }

  constexpr int index() const { return index_; }
  constexpr bool is_pass() const { return index_ == kPass; }
  constexpr bool is_double() const { return index_ == kDouble; }
  constexpr bool is_redouble() const { return index_ == kRedouble; }
  constexpr bool is_bid() const { return index_ >= kFirstBid; }
  // Position of a bid among all bids (0 = 1C).
  constexpr int bid_index() const { return index_ - kFirstBid; }
  constexpr int level() const { return 1 + bid_index() / kNumStrains; }
  constexpr Strain strain() const {
    return static_cast<Strain>(bid_index() % kNumStrains);
  }

  // "P", "X", "XX", "1C".."7N".
  std::string ToString() const;
  // Inverse of ToString; also accepts "Pass", "Dbl", "RDbl", "1NT".
  static Call Parse(std::string_view text, const GameVariant& variant);

  friend constexpr bool operator==(Call, Call) = default;

 private:
  int index_ = kPass;
};

// Legal-call bitmask indexed by Call::index(). Reduced variants have at most
// 63 actions so one word suffices.
class CallMask {
 public:
  constexpr CallMask() = default;
  constexpr explicit CallMask(std::uint64_t bits) : bits_(bits) {}

  constexpr bool test(int index) const { return (bits_ >> index) & 1; }
  constexpr bool test(Call c) const { return test(c.index()); }
  constexpr void set(int index) { bits_ |= std::uint64_t{1} << index; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr bool none() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr bool operator==(CallMask, CallMask) = default;

 private:
  std::uint64_t bits_ = 0;
};

enum class DoubleStatus : std::uint8_t { kUndoubled = 0, kDoubled = 1, kRedoubled = 2 };

struct Contract {
  bool passed_out = true;
  int level = 0;
  Strain strain = Strain::kClubs;
  Seat declarer = Seat::kNorth;
  DoubleStatus double_status = DoubleStatus::kUndoubled;

  static Contract PassedOut() { return Contract{}; }
  std::string ToString() const;  // "Passed out", "4S by N", "1NXX by N"

  friend bool operator==(const Contract&, const Contract&) = default;
};

// Immutable auction value. Apply returns a new state.
class AuctionState {
 public:
  AuctionState(const GameVariant& variant, Seat dealer);

  // Replays `calls` from the dealer; throws ContractViolation on the first
  // illegal call.
  static AuctionState FromHistory(const GameVariant& variant, Seat dealer,
                                  const std::vector<Call>& calls);

  const GameVariant& variant() const { return variant_; }
  Seat dealer() const { return dealer_; }
  const std::vector<Call>& history() const { return history_; }
  Seat to_act() const { return NextSeat(dealer_, static_cast<int>(history_.size())); }
  Seat SeatOfCall(std::size_t i) const { return NextSeat(dealer_, static_cast<int>(i)); }
  std::optional<Call> highest_bid() const;
  std::optional<Seat> highest_bidder() const;
  DoubleStatus double_status() const { return double_status_; }
  int consecutive_passes() const { return consecutive_passes_; }

  bool IsTerminal() const;
  CallMask LegalMask() const;
  bool IsLegal(Call call) const;
  // Empty when `call` is legal, otherwise the violated rule.
  std::string WhyIllegal(Call call) const;
  AuctionState Apply(Call call) const;
  Contract FinalContract() const;

 private:
  void ApplyInPlace(Call call);

  GameVariant variant_;
  Seat dealer_;
  std::vector<Call> history_;
  int highest_bid_ = -1;  // call index, -1 when none
  Seat highest_bidder_ = Seat::kNorth;
  DoubleStatus double_status_ = DoubleStatus::kUndoubled;
  Seat last_doubler_ = Seat::kNorth;
  int consecutive_passes_ = 0;
  // first_namer_[side][strain]: seat index + 1, 0 when not yet named.
  std::uint8_t first_namer_[2][kNumStrains] = {};
};

}  // namespace brl

#endif  // BRL_AUCTION_H_
