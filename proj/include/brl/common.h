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

#ifndef BRL_COMMON_H_
#define BRL_COMMON_H_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brl {

// Error categories. The CLI maps each one onto a distinct exit status.

// A caller broke a documented precondition (illegal call, wrong hand size...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or inconsistent input data. `line` is 1-based, 0 when unknown.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          what
                                    : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite loss or parameters.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request outside what this build can compute (e.g. exhaustive
// double-dummy search on a full deck).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kNumSeats = 4;
inline constexpr int kNumSuits = 4;
inline constexpr int kNumStrains = 5;

enum class Seat : std::uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

// Partnerships: NS = 0, EW = 1.
enum class Side : std::uint8_t { kNS = 0, kEW = 1 };

enum class Strain : std::uint8_t {
  kClubs = 0,
  kDiamonds = 1,
  kHearts = 2,
  kSpades = 3,
  kNoTrump = 4
};

enum class Vulnerability : std::uint8_t { kNone = 0, kNS = 1, kEW = 2, kBoth = 3 };

inline constexpr std::array<Seat, kNumSeats> kAllSeats = {
    Seat::kNorth, Seat::kEast, Seat::kSouth, Seat::kWest};
inline constexpr std::array<Strain, kNumStrains> kAllStrains = {
    Strain::kClubs, Strain::kDiamonds, Strain::kHearts, Strain::kSpades,
    Strain::kNoTrump};

constexpr int Index(Seat s) { return static_cast<int>(s); }
constexpr int Index(Strain s) { return static_cast<int>(s); }
constexpr int Index(Side s) { return static_cast<int>(s); }

constexpr Seat SeatAt(int i) { return static_cast<Seat>(((i % 4) + 4) % 4); }
constexpr Seat NextSeat(Seat s, int steps = 1) {
  return SeatAt(Index(s) + steps);
}
constexpr Seat Partner(Seat s) { return NextSeat(s, 2); }
constexpr Side SideOf(Seat s) { return static_cast<Side>(Index(s) & 1); }
constexpr Side Opponents(Side s) { return static_cast<Side>(Index(s) ^ 1); }

// Seat position of `player` counted clockwise from `observer` (0 = self,
// 1 = left-hand opponent, 2 = partner, 3 = right-hand opponent).
constexpr int Relative(Seat player, Seat observer) {
  return (Index(player) - Index(observer) + kNumSeats) % kNumSeats;
}

constexpr bool IsVulnerable(Vulnerability v, Side side) {
  switch (v) {
    case Vulnerability::kNone:
      return false;
    case Vulnerability::kNS:
      return side == Side::kNS;
    case Vulnerability::kEW:
      return side == Side::kEW;
    case Vulnerability::kBoth:
      return true;
  }
  return false;
}

char SeatChar(Seat s);
Seat ParseSeat(std::string_view text);
char StrainChar(Strain s);  // C D H S N
std::string VulnerabilityName(Vulnerability v);  // None NS EW Both
Vulnerability ParseVulnerability(std::string_view text);

// Deck and auction dimensions. Standard bridge is 13 ranks with a book of
// six; reduced decks keep the top `ranks_per_suit` ranks and a book of zero.
struct GameVariant {
  int ranks_per_suit = 13;
  int book = 6;

  static constexpr GameVariant Standard() { return {13, 6}; }
  static GameVariant Reduced(int ranks_per_suit);
  // Accepts "standard", "n13", "n3".."n12".
  static GameVariant Parse(std::string_view name);

  std::string Name() const;
  void Validate() const;

  constexpr int max_level() const { return ranks_per_suit - book; }
  constexpr int num_cards() const { return kNumSuits * ranks_per_suit; }
  constexpr int cards_per_hand() const { return ranks_per_suit; }
  constexpr int tricks_per_deal() const { return ranks_per_suit; }
  constexpr int num_bids() const { return kNumStrains * max_level(); }
  constexpr int action_count() const { return 3 + num_bids(); }
  constexpr int feature_width() const {
    return 4 + 4 + 3 * (num_bids() * kNumSeats) + num_cards();
  }
  // Lowest rank present, 2..14 (ace = 14).
  constexpr int lowest_rank() const { return 15 - ranks_per_suit; }

  friend bool operator==(const GameVariant&, const GameVariant&) = default;
};

}  // namespace brl

#endif  // BRL_COMMON_H_
