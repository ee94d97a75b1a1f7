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

#include "brl/common.h"

#include <charconv>
#include <string>

namespace brl {

char SeatChar(Seat s) { return "NESW"[Index(s)]; }

Seat ParseSeat(std::string_view text) {
  if (text.size() == 1) {
    switch (text[0]) {
      case 'N':
      case 'n':
        return Seat::kNorth;
      case 'E':
      case 'e':
        return Seat::kEast;
      case 'S':
      case 's':
        return Seat::kSouth;
      case 'W':
      case 'w':
        return Seat::kWest;
    }
  }
  if (text == "North") return Seat::kNorth;
  if (text == "East") return Seat::kEast;
  if (text == "South") return Seat::kSouth;
  if (text == "West") return Seat::kWest;
  throw DataError("unknown seat '" + std::string(text) + "'");
}

char StrainChar(Strain s) { return "CDHSN"[Index(s)]; }

std::string VulnerabilityName(Vulnerability v) {
  switch (v) {
    case Vulnerability::kNone:
      return "None";
    case Vulnerability::kNS:
      return "NS";
    case Vulnerability::kEW:
      return "EW";
    case Vulnerability::kBoth:
      return "Both";
  }
  return "None";
}

Vulnerability ParseVulnerability(std::string_view text) {
  if (text == "None") return Vulnerability::kNone;
  if (text == "NS") return Vulnerability::kNS;
  if (text == "EW") return Vulnerability::kEW;
  if (text == "Both" || text == "All") return Vulnerability::kBoth;
  throw DataError("unknown vulnerability '" + std::string(text) + "'");
}

GameVariant GameVariant::Reduced(int ranks_per_suit) {
  if (ranks_per_suit == 13) return Standard();
  GameVariant v{ranks_per_suit, 0};
  v.Validate();
  return v;
}

GameVariant GameVariant::Parse(std::string_view name) {
  if (name == "standard") return Standard();
  if (name.size() >= 2 && (name[0] == 'n' || name[0] == 'N')) {
    int n = 0;
    const auto* first = name.data() + 1;
    const auto* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last && n >= 3 && n <= 13) {
      return Reduced(n);
    }
  }
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected standard or n3..n13)");
}

std::string GameVariant::Name() const {
  if (*this == Standard()) return "standard";
  return "n" + std::to_string(ranks_per_suit);
}

void GameVariant::Validate() const {
  if (ranks_per_suit < 3 || ranks_per_suit > 13) {
    throw ContractViolation("ranks_per_suit must lie in [3, 13], got " +
                            std::to_string(ranks_per_suit));
  }
  const int expected_book = ranks_per_suit == 13 ? 6 : 0;
  if (book != expected_book) {
    throw ContractViolation("variant with " + std::to_string(ranks_per_suit) +
                            " ranks must use book " +
                            std::to_string(expected_book));
  }
}

}  // namespace brl
