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

#include "brl/auction.h"

namespace brl {

std::string Call::ToString() const {
  if (is_pass()) return "P";
  if (is_double()) return "X";
  if (is_redouble()) return "XX";
  return std::to_string(level()) + StrainChar(strain());
}

Call Call::Parse(std::string_view text, const GameVariant& variant) {
  if (text == "P" || text == "p" || text == "Pass" || text == "pass") {
    return Pass();
  }
  if (text == "X" || text == "x" || text == "Dbl") return Double();
  if (text == "XX" || text == "xx" || text == "RDbl") return Redouble();
  if (text.size() >= 2 && text[0] >= '1' && text[0] <= '9') {
    const int level = text[0] - '0';
    std::string_view rest = text.substr(1);
    if (rest == "NT" || rest == "nt") rest = "N";
    if (rest.size() == 1 && level <= variant.max_level()) {
      switch (rest[0]) {
        case 'C':
        case 'c':
          return Bid(level, Strain::kClubs);
        case 'D':
        case 'd':
          return Bid(level, Strain::kDiamonds);
        case 'H':
        case 'h':
          return Bid(level, Strain::kHearts);
        case 'S':
        case 's':
          return Bid(level, Strain::kSpades);
        case 'N':
        case 'n':
          return Bid(level, Strain::kNoTrump);
      }
    }
  }
  throw DataError("unrecognized call '" + std::string(text) + "'");
}

std::string Contract::ToString() const {
  if (passed_out) return "Passed out";
  std::string out = std::to_string(level) + StrainChar(strain);
  if (double_status == DoubleStatus::kDoubled) out += "X";
  if (double_status == DoubleStatus::kRedoubled) out += "XX";
  return out + " by " + SeatChar(declarer);
}

AuctionState::AuctionState(const GameVariant& variant, Seat dealer)
    : variant_(variant), dealer_(dealer) {
  history_.reserve(16);
}

AuctionState AuctionState::FromHistory(const GameVariant& variant, Seat dealer,
                                       const std::vector<Call>& calls) {
  AuctionState state(variant, dealer);
  for (Call c : calls) {
    const std::string why = state.WhyIllegal(c);
    if (!why.empty()) throw ContractViolation(why);
    state.ApplyInPlace(c);
  }
  return state;
}

std::optional<Call> AuctionState::highest_bid() const {
  if (highest_bid_ < 0) return std::nullopt;
  return Call(highest_bid_);
}

std::optional<Seat> AuctionState::highest_bidder() const {
  if (highest_bid_ < 0) return std::nullopt;
  return highest_bidder_;
}

bool AuctionState::IsTerminal() const {
  if (highest_bid_ < 0) return consecutive_passes_ >= 4;
  return consecutive_passes_ >= 3;
}

CallMask AuctionState::LegalMask() const {
  if (IsTerminal()) {
    throw ContractViolation("legal mask requested for a finished auction");
  }
  CallMask mask;
  mask.set(Call::kPass);
  const Side us = SideOf(to_act());
  if (highest_bid_ >= 0) {
    if (double_status_ == DoubleStatus::kUndoubled &&
        SideOf(highest_bidder_) != us) {
      mask.set(Call::kDouble);
    }
    if (double_status_ == DoubleStatus::kDoubled &&
        SideOf(last_doubler_) != us) {
      mask.set(Call::kRedouble);
    }
  }
  const int first = highest_bid_ < 0 ? Call::kFirstBid : highest_bid_ + 1;
  for (int b = first; b < variant_.action_count(); ++b) mask.set(b);
  return mask;
}

bool AuctionState::IsLegal(Call call) const { return WhyIllegal(call).empty(); }

std::string AuctionState::WhyIllegal(Call call) const {
  if (IsTerminal()) return "the auction is over";
  if (call.index() < 0 || call.index() >= variant_.action_count()) {
    return "call index " + std::to_string(call.index()) +
           " is outside [0, " + std::to_string(variant_.action_count()) + ")";
  }
  const Side us = SideOf(to_act());
  if (call.is_pass()) return {};
  if (call.is_double()) {
    if (highest_bid_ < 0) return "double requires a bid to double";
    if (double_status_ != DoubleStatus::kUndoubled) {
      return "double requires an undoubled bid";
    }
    if (SideOf(highest_bidder_) == us) {
      return "double must be of an opponent's bid";
    }
    return {};
  }
  if (call.is_redouble()) {
    if (double_status_ != DoubleStatus::kDoubled) {
      return "redouble requires an outstanding double";
    }
    if (SideOf(last_doubler_) == us) {
      return "redouble must answer an opponent's double";
    }
    return {};
  }
  if (highest_bid_ >= 0 && call.index() <= highest_bid_) {
    return "bid " + call.ToString() + " is not higher than " +
           Call(highest_bid_).ToString();
  }
  return {};
}

AuctionState AuctionState::Apply(Call call) const {
  const std::string why = WhyIllegal(call);
  if (!why.empty()) throw ContractViolation("illegal call: " + why);
  AuctionState next = *this;
  next.ApplyInPlace(call);
  return next;
}

void AuctionState::ApplyInPlace(Call call) {
  const Seat actor = to_act();
  if (call.is_pass()) {
    ++consecutive_passes_;
  } else {
    consecutive_passes_ = 0;
    if (call.is_double()) {
      double_status_ = DoubleStatus::kDoubled;
      last_doubler_ = actor;
    } else if (call.is_redouble()) {
      double_status_ = DoubleStatus::kRedoubled;
    } else {
      highest_bid_ = call.index();
      highest_bidder_ = actor;
      double_status_ = DoubleStatus::kUndoubled;
      auto& namer = first_namer_[Index(SideOf(actor))][Index(call.strain())];
      if (namer == 0) namer = static_cast<std::uint8_t>(Index(actor) + 1);
    }
  }
  history_.push_back(call);
}

Contract AuctionState::FinalContract() const {
  if (!IsTerminal()) {
    throw ContractViolation("final contract requested before the auction ended");
  }
  if (highest_bid_ < 0) return Contract::PassedOut();
  const Call bid(highest_bid_);
  Contract c;
  c.passed_out = false;
  c.level = bid.level();
  c.strain = bid.strain();
  c.double_status = double_status_;
  c.declarer = SeatAt(
      first_namer_[Index(SideOf(highest_bidder_))][Index(bid.strain())] - 1);
  return c;
}

}  // namespace brl
