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

// Property checks shared by the unit tests (small sizes) and the acceptance
// binary (full sizes). Each returns ok plus a description of the first
// failure, and compares library output against a route in oracles.h or a
// rule restated here.

#ifndef BRL_TESTS_PROPERTY_CHECKS_H_
#define BRL_TESTS_PROPERTY_CHECKS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "brl/auction.h"
#include "brl/dds.h"
#include "brl/deals.h"
#include "brl/features.h"
#include "brl/nn.h"
#include "brl/rl.h"
#include "brl/rng.h"
#include "brl/scoring.h"
#include "oracles.h"

namespace brl::checks {

struct CheckResult {
  bool ok = true;
  std::string detail;

  void Fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

inline GameVariant VariantFor(int n) {
  return n == 13 ? GameVariant::Standard() : GameVariant::Reduced(n);
}

// ---------------------------------------------------------------------------
// Scoring.

inline CheckResult CheckScoringTable(int* max_abs_out = nullptr) {
  CheckResult r;
  int combos = 0;
  int max_abs = 0;
  const DoubleStatus kDoubling[3] = {DoubleStatus::kUndoubled, DoubleStatus::kDoubled,
                                     DoubleStatus::kRedoubled};
  for (int level = 1; level <= 7; ++level) {
    for (int strain = 0; strain < 5; ++strain) {
      for (int dbl = 0; dbl < 3; ++dbl) {
        for (int vul = 0; vul < 2; ++vul) {
          for (int tricks = 0; tricks <= 13; ++tricks) {
            ++combos;
            const Contract c{false, level, static_cast<Strain>(strain), Seat::kNorth,
                             kDoubling[dbl]};
            const int got = ContractScore(c, tricks, vul != 0);
            const int want = oracle::TableScore(level, strain, dbl, vul != 0, tricks);
            max_abs = std::max(max_abs, std::abs(got));
            if (got != want) {
              std::ostringstream os;
              os << c.ToString() << " vul=" << vul << " tricks=" << tricks
                 << ": got " << got << " want " << want;
              r.Fail(os.str());
            }
          }
        }
      }
    }
  }
  if (combos != 2940) r.Fail("enumerated " + std::to_string(combos) + " combinations");
  if (max_abs != 7600) r.Fail("max |score| is " + std::to_string(max_abs));
  if (MaxAbsScore(GameVariant::Standard()) != 7600) r.Fail("MaxAbsScore(standard)");
  if (max_abs_out) *max_abs_out = max_abs;
  return r;
}

// Boundaries of all 25 bands, then oddness and monotonicity on every
// difference in [-10000, 10000].
inline CheckResult CheckImpTable() {
  CheckResult r;
  for (const oracle::ImpBand& b : oracle::kImpBands) {
    for (int d : {b.lo, std::min(b.hi, 10000)}) {
      if (Imps(d) != b.imps) {
        r.Fail("Imps(" + std::to_string(d) + ") = " + std::to_string(Imps(d)) +
               ", want " + std::to_string(b.imps));
      }
    }
  }
  for (int d = -10000; d <= 10000; d += 10) {
    if (Imps(d) != oracle::BandImps(d)) r.Fail("band mismatch at " + std::to_string(d));
  }
  int prev = Imps(-20000);
  for (int d = -20000; d <= 20000; ++d) {
    const int v = Imps(d);
    if (Imps(-d) != -v) r.Fail("not odd at " + std::to_string(d));
    if (v < prev) r.Fail("not monotone at " + std::to_string(d));
    if (v < -24 || v > 24) r.Fail("out of range at " + std::to_string(d));
    prev = v;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Auction. Legality restated from the laws over the raw history.

struct OracleAuction {
  bool terminal = false;
  int highest = -1;  // call index
  int bidder = -1;   // absolute seat
  int doubled = 0;   // 0, 1, 2
};

inline OracleAuction ReplayOracle(int dealer, const std::vector<Call>& calls) {
  OracleAuction a;
  int passes = 0;
  for (std::size_t i = 0; i < calls.size(); ++i) {
    const int seat = (dealer + static_cast<int>(i)) % 4;
    const Call c = calls[i];
    if (c.is_pass()) {
      ++passes;
    } else {
      passes = 0;
      if (c.is_bid()) {
        a.highest = c.index();
        a.bidder = seat;
        a.doubled = 0;
      } else {
        a.doubled = c.is_double() ? 1 : 2;
      }
    }
  }
  a.terminal = (a.highest < 0 && passes >= 4) || (a.highest >= 0 && passes >= 3);
  return a;
}

inline bool OracleLegal(const OracleAuction& a, int seat, Call c, const GameVariant& v) {
  if (a.terminal) return false;
  if (c.index() < 0 || c.index() >= v.action_count()) return false;
  if (c.is_pass()) return true;
  if (c.is_bid()) return c.index() > a.highest;
  const bool opponents_bid = a.highest >= 0 && (a.bidder % 2) != (seat % 2);
  if (c.is_double()) return opponents_bid && a.doubled == 0;
  return a.highest >= 0 && !opponents_bid && a.doubled == 1;
}

// Random legal playouts. At every state each call's mask bit, WhyIllegal and
// the oracle agree; `apply_every` states also try Apply on every call.
inline CheckResult CheckAuctionPlayouts(int count, std::uint64_t seed,
                                        int apply_every = 1,
                                        std::uint64_t* states_out = nullptr) {
  CheckResult r;
  Rng rng(seed, 0xA0C);
  std::uint64_t states = 0;
  const int max_calls = 320;
  for (int game = 0; game < count && r.ok; ++game) {
    const GameVariant v = VariantFor(game % 3 == 0 ? 5 : 13);
    const Seat dealer = SeatAt(static_cast<int>(rng.Below(4)));
    AuctionState state(v, dealer);
    std::vector<Call> calls;
    int last_bid = -1;
    for (;;) {
      ++states;
      const OracleAuction oa = ReplayOracle(Index(dealer), calls);
      if (state.IsTerminal() != oa.terminal) {
        r.Fail("terminal flag disagrees after " + std::to_string(calls.size()) +
               " calls");
        break;
      }
      if (oa.terminal) {
        // Finished auctions reject every query and every call.
        bool mask_threw = false;
        try {
          (void)state.LegalMask();
        } catch (const ContractViolation&) {
          mask_threw = true;
        }
        if (!mask_threw) r.Fail("terminal state returned a legal mask");
        for (int i = 0; i < v.action_count(); ++i) {
          if (state.IsLegal(Call(i))) r.Fail("terminal state accepts a call");
        }
        break;
      }
      const int seat = (Index(dealer) + static_cast<int>(calls.size())) % 4;
      const CallMask mask = state.LegalMask();
      std::vector<Call> legal;
      for (int i = 0; i < v.action_count(); ++i) {
        const Call c(i);
        const bool want = OracleLegal(oa, seat, c, v);
        if (mask.test(i) != want || state.IsLegal(c) != want ||
            state.WhyIllegal(c).empty() != want) {
          r.Fail("legality of " + c.ToString() + " disagrees after " +
                 std::to_string(calls.size()) + " calls");
        }
        // Legal calls are applied at every state; the (slow) throwing path
        // for illegal calls every `apply_every` states.
        if (want || states % apply_every == 0) {
          bool threw = false;
          try {
            const AuctionState next = state.Apply(c);
            if (next.history().size() != calls.size() + 1 || !(next.history().back() == c)) {
              r.Fail("Apply(" + c.ToString() + ") did not append the call");
            }
          } catch (const ContractViolation&) {
            threw = true;
          }
          if (threw == want) r.Fail("Apply(" + c.ToString() + ") incoherent with mask");
        }
        if (want) legal.push_back(c);
      }
      if (mask.bits() >> v.action_count()) r.Fail("mask bits beyond the action count");
      if (legal.empty()) {
        r.Fail("live state without legal calls");
        break;
      }
      if (static_cast<int>(calls.size()) >= max_calls) {
        r.Fail("auction did not terminate within " + std::to_string(max_calls));
        break;
      }
      const Call c = legal[rng.Below(legal.size())];
      if (c.is_bid()) {
        if (c.bid_index() <= last_bid) r.Fail("bid index did not increase");
        last_bid = c.bid_index();
      }
      calls.push_back(c);
      state = state.Apply(c);
      if (state.history() != calls) r.Fail("history differs from the applied calls");
    }
    if (r.ok && !(AuctionState::FromHistory(v, dealer, calls).FinalContract() ==
                  state.FinalContract())) {
      r.Fail("replayed contract differs");
    }
  }
  if (states_out) *states_out = states;
  return r;
}

struct DeclarerScenario {
  Seat dealer;
  const char* calls;  // space separated
  const char* contract;
};

inline CheckResult CheckDeclarerScenarios() {
  static const DeclarerScenario kScenarios[] = {
      {Seat::kNorth, "1S P 2S P P P", "2S by N"},
      {Seat::kNorth, "1N X XX P P P", "1NXX by N"},
      {Seat::kNorth, "P 1H P 2H P P P", "2H by E"},
      {Seat::kNorth, "1C P 1S P 2S P P P", "2S by S"},
      {Seat::kEast, "1D 1H 2D 2H 3D P P 3H P P P", "3H by S"},
      {Seat::kWest, "1S P P X P P P", "1SX by W"},
      {Seat::kSouth, "P P P P", "Passed out"},
      {Seat::kNorth, "1H P 2C P 2D P 3N P P P", "3N by S"},
      {Seat::kNorth, "1C 1H 2H P 3C P P P", "3C by N"},
  };
  CheckResult r;
  const GameVariant v = GameVariant::Standard();
  for (const DeclarerScenario& s : kScenarios) {
    std::vector<Call> calls;
    std::istringstream in(s.calls);
    std::string tok;
    while (in >> tok) calls.push_back(Call::Parse(tok, v));
    const AuctionState state = AuctionState::FromHistory(v, s.dealer, calls);
    if (!state.IsTerminal()) r.Fail(std::string(s.calls) + " did not terminate");
    const std::string got = state.FinalContract().ToString();
    if (got != s.contract) r.Fail(std::string(s.calls) + ": got " + got);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Double-dummy solver against exhaustive minimax.

inline std::array<std::vector<oracle::PlayCard>, 4> OracleHands(const Deal& d) {
  std::array<std::vector<oracle::PlayCard>, 4> hands;
  for (int s = 0; s < 4; ++s) {
    for (int i = 0; i < d.variant.num_cards(); ++i) {
      if ((d.hands[s] >> i) & 1) {
        const Card c = Card::FromIndex(i, d.variant);
        hands[s].push_back({Index(c.suit), c.rank});
      }
    }
  }
  return hands;
}

inline CheckResult CheckSolverAgainstBruteForce(int n, int deals, std::uint64_t seed) {
  CheckResult r;
  const GameVariant v = GameVariant::Reduced(n);
  for (int b = 1; b <= deals && r.ok; ++b) {
    const Deal d = GenerateDeal(seed, v, b);
    const DdsTable table = FullTable(d);
    for (Strain strain : kAllStrains) {
      for (Seat declarer : kAllSeats) {
        oracle::BruteForcePlay play(OracleHands(d), Index(strain));
        const int want = play.DeclarerTricks(Index(declarer));
        if (table.tricks(declarer, strain) != want) {
          std::ostringstream os;
          os << "N=" << n << " " << FormatDeal(d) << " " << StrainChar(strain) << " by "
             << SeatChar(declarer) << ": solver " << table.tricks(declarer, strain)
             << " exhaustive " << want;
          r.Fail(os.str());
        }
      }
    }
  }
  return r;
}

// Deals where one seat holds an entire suit: that seat takes every trick
// declaring in its suit, whoever leads.
inline CheckResult CheckAllTrumpHands() {
  CheckResult r;
  for (int n = 3; n <= kMaxSolvableRanks; ++n) {
    const GameVariant v = GameVariant::Reduced(n);
    for (int rot = 0; rot < 4; ++rot) {
      Deal d;
      d.variant = v;
      for (int s = 0; s < 4; ++s) {
        d.hands[(s + rot) % 4] = SuitMask(v, static_cast<Suit>(s));
      }
      for (int s = 0; s < 4; ++s) {
        const Seat holder = SeatAt((s + rot) % 4);
        const int got = SolveDoubleDummy(d, static_cast<Strain>(s), holder);
        if (got != n) {
          r.Fail("N=" + std::to_string(n) + " " + FormatDeal(d) + ": holder of " +
                 StrainChar(static_cast<Strain>(s)) + " makes " + std::to_string(got));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Feature encoding. Expected bits are rebuilt from the raw history.

inline CheckResult CheckFeaturePrefixes(int count, std::uint64_t seed) {
  CheckResult r;
  if (GameVariant::Standard().feature_width() != 480) r.Fail("standard width != 480");
  if (GameVariant::Standard().action_count() != 38) r.Fail("standard actions != 38");
  Rng rng(seed, 0xFEA7);
  for (int i = 0; i < count && r.ok; ++i) {
    const int n = (i % 2 == 0) ? 13 : 3 + static_cast<int>(rng.Below(10));
    const GameVariant v = VariantFor(n);
    const Deal deal = GenerateDeal(seed + 1, v, 1 + i);
    AuctionState state(v, deal.dealer);
    // Random prefix: stop with probability 1/6 per call, or when one call
    // from the end.
    for (;;) {
      if (rng.Below(6) == 0) break;
      std::vector<Call> legal;
      const CallMask m = state.LegalMask();
      for (int a = 0; a < v.action_count(); ++a) {
        if (m.test(a)) legal.push_back(Call(a));
      }
      const AuctionState next = state.Apply(legal[rng.Below(legal.size())]);
      if (next.IsTerminal()) break;
      state = next;
    }
    const Observation obs = Encode(state, deal);
    const FeatureLayout L = FeatureLayout::For(v);
    if (static_cast<int>(obs.bits.size()) != v.feature_width() ||
        L.width != v.feature_width()) {
      r.Fail("width mismatch for " + v.Name());
      break;
    }
    for (std::uint8_t b : obs.bits) {
      if (b > 1) r.Fail("non-binary feature");
    }
    std::vector<std::uint8_t> want(obs.bits.size(), 0);
    const Seat me = state.to_act();
    const int mine = Index(SideOf(me));
    const bool vul_us = IsVulnerable(deal.vulnerability, static_cast<Side>(mine));
    const bool vul_them = IsVulnerable(deal.vulnerability, static_cast<Side>(1 - mine));
    want[vul_us ? 1 : 0] = 1;
    want[vul_them ? 3 : 2] = 1;
    int last = -1;
    for (std::size_t k = 0; k < state.history().size(); ++k) {
      const Call c = state.history()[k];
      const int rel = (Index(deal.dealer) + static_cast<int>(k) - Index(me) + 8) % 4;
      if (c.is_pass()) {
        if (last < 0) want[4 + rel] = 1;
      } else if (c.is_bid()) {
        last = c.bid_index();
        want[L.bids + 4 * last + rel] = 1;
      } else {
        want[(c.is_double() ? L.doubles : L.redoubles) + 4 * last + rel] = 1;
      }
    }
    int hand_bits = 0;
    for (int c = 0; c < v.num_cards(); ++c) {
      if ((deal.hand(me) >> c) & 1) want[L.hand + c] = 1;
      hand_bits += obs.bits[L.hand + c];
    }
    if (hand_bits != n) r.Fail("hand block holds " + std::to_string(hand_bits));
    if (obs.bits != want) {
      r.Fail("bits differ from the history rebuild at prefix " +
             std::to_string(state.history().size()) + " of " + v.Name());
    }
    // One-hot: vulnerability pairs, and every (bid, kind) group of 4.
    if (obs.bits[0] + obs.bits[1] != 1 || obs.bits[2] + obs.bits[3] != 1) {
      r.Fail("vulnerability group not one-hot");
    }
    for (int g = 0; g < 3 * v.num_bids(); ++g) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += obs.bits[L.bids + 4 * g + k];
      if (s > 1) r.Fail("call group " + std::to_string(g) + " not one-hot");
    }
    // Round trip through the decoder, and relativity: the same history seen
    // from another seat is the decoded list with seats rotated.
    const std::vector<DecodedCall> decoded = DecodeCalls(obs.bits, v);
    if (decoded != CallsFromHistory(state, me)) r.Fail("decode round trip");
    const Seat other = NextSeat(me, 1 + static_cast<int>(rng.Below(3)));
    std::vector<DecodedCall> rotated = decoded;
    for (DecodedCall& c : rotated) {
      c.relative_seat = (c.relative_seat + Relative(me, other)) % 4;
    }
    if (rotated != CallsFromHistory(state, other)) r.Fail("relativity");
    if (!(obs.mask == state.LegalMask())) r.Fail("mask differs from the legal mask");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Gradients by central differences in double precision.

struct GradCheck {
  CheckResult result;
  double max_rel_error = 0;
  std::size_t checked = 0;
};

inline double RelError(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

template <typename LossFn>
GradCheck FiniteDifference(PolicyValueParams<double> params,
                           const PolicyValueParams<double>& grads, LossFn loss,
                           double tolerance) {
  GradCheck g;
  std::vector<double> flat = params.Flatten();
  const std::vector<double> analytic = grads.Flatten();
  const double h = 1e-6;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    const double saved = flat[i];
    flat[i] = saved + h;
    params.Unflatten(flat);
    const double up = loss(params);
    flat[i] = saved - h;
    params.Unflatten(flat);
    const double down = loss(params);
    flat[i] = saved;
    const double numeric = (up - down) / (2 * h);
    const double err = RelError(analytic[i], numeric);
    g.max_rel_error = std::max(g.max_rel_error, err);
    ++g.checked;
  }
  if (g.max_rel_error >= tolerance) {
    g.result.Fail("max relative error " + std::to_string(g.max_rel_error));
  }
  return g;
}

inline CallMask RandomMask(Rng& rng, int width) {
  CallMask m;
  m.set(0);  // pass is always legal
  for (int j = 1; j < width; ++j) {
    if (rng.Below(3) != 0) m.set(j);
  }
  return m;
}

inline PolicyValueParams<double> ToyParams(Rng& rng, const NetConfig& net) {
  PolicyValueParams<double> p = PolicyValueParams<double>::Init(net, rng);
  // Non-zero biases and a livelier policy head exercise every term.
  p.ForEachTensor([&](std::span<double> t) {
    for (double& x : t) x += 0.1 * rng.Normal();
  });
  return p;
}

inline Matrix<double> ToyInputs(Rng& rng, int width, int batch) {
  Matrix<double> x(width, batch);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.Normal();
  return x;
}

inline GradCheck CheckSlGradient(std::uint64_t seed) {
  Rng rng(seed, 0x5106);
  const NetConfig net{6, 2, 5, 4};
  const PolicyValueParams<double> params = ToyParams(rng, net);
  SlBatch<double> batch;
  const int n = 7;
  batch.inputs = ToyInputs(rng, net.input_width, n);
  for (int i = 0; i < n; ++i) {
    const CallMask m = RandomMask(rng, net.policy_width);
    batch.masks.push_back(m);
    std::vector<int> legal;
    for (int j = 0; j < net.policy_width; ++j) {
      if (m.test(j)) legal.push_back(j);
    }
    batch.targets.push_back(legal[rng.Below(legal.size())]);
  }
  const auto lg = SlLossAndGrad(params, batch);
  return FiniteDifference(
      params, lg.grads,
      [&](const PolicyValueParams<double>& p) { return SlLossAndGrad(p, batch).loss; },
      1e-4);
}

inline GradCheck CheckPpoGradient(std::uint64_t seed, bool clip_value_loss = true) {
  Rng rng(seed, 0x9906);
  const NetConfig net{6, 2, 5, 4};
  const PolicyValueParams<double> params = ToyParams(rng, net);
  PpoBatch<double> batch;
  const int n = 9;
  batch.inputs = ToyInputs(rng, net.input_width, n);
  for (int i = 0; i < n; ++i) batch.masks.push_back(RandomMask(rng, net.policy_width));
  const ForwardResult<double> fwd = Forward(params, batch.inputs, batch.masks);
  std::vector<double> logp(net.policy_width);
  for (int i = 0; i < n; ++i) {
    std::vector<int> legal;
    for (int j = 0; j < net.policy_width; ++j) {
      if (batch.masks[i].test(j)) legal.push_back(j);
    }
    const int a = legal[rng.Below(legal.size())];
    batch.actions.push_back(a);
    MaskedLogSoftmax(fwd.logits.col(i).data(), batch.masks[i], net.policy_width,
                     logp.data());
    // Old log-probabilities spread so that some ratios sit outside the clip
    // range while staying away from its edges.
    const double shift = (i % 3 == 0) ? 0.5 : 0.05 * rng.Normal();
    batch.old_log_probs.push_back(logp[a] - shift);
    batch.old_values.push_back(fwd.values(i) + ((i % 2) ? 0.5 : 0.05));
    batch.advantages.push_back(rng.Normal());
    batch.returns.push_back(rng.Normal());
  }
  PpoLossConfig config;
  config.entropy_coef = 0.01;
  config.clip_value_loss = clip_value_loss;
  const auto lg = PpoLossAndGrad(params, batch, config);
  return FiniteDifference(
      params, lg.grads,
      [&](const PolicyValueParams<double>& p) {
        return PpoLossAndGrad(p, batch, config).loss;
      },
      1e-4);
}

// Illegal calls get probability exactly zero, in float and double.
inline CheckResult CheckMaskedProbabilities(int trials, std::uint64_t seed) {
  CheckResult r;
  Rng rng(seed, 0x3A5C);
  const NetConfig net = NetConfig::ForVariant(GameVariant::Reduced(5), 16, 2);
  const auto params = PolicyValueParams<float>::Init(net, rng);
  Matrix<float> x(net.input_width, trials);
  std::vector<CallMask> masks;
  for (int i = 0; i < trials; ++i) {
    for (int k = 0; k < net.input_width; ++k) x(k, i) = static_cast<float>(rng.Below(2));
    masks.push_back(RandomMask(rng, net.policy_width));
  }
  const auto fwd = Forward(params, x, masks);
  const Matrix<double> x64 = x.cast<double>();
  const auto fwd64 = Forward(params.Cast<double>(), x64, masks);
  for (int i = 0; i < trials; ++i) {
    double total = 0;
    for (int j = 0; j < net.policy_width; ++j) {
      if (!masks[i].test(j) && (fwd.probs(j, i) != 0.0f || fwd64.probs(j, i) != 0.0)) {
        r.Fail("illegal call " + std::to_string(j) + " has non-zero probability");
      }
      total += fwd64.probs(j, i);
    }
    if (std::abs(total - 1.0) > 1e-12) r.Fail("probabilities do not sum to one");
  }
  return r;
}

// ---------------------------------------------------------------------------
// GAE against the explicit-sum oracle.

struct RandomBuffer {
  int num_envs, length;
  std::vector<double> rewards, values, bootstrap;
  std::vector<std::uint8_t> dones;

  std::vector<int> dones_int() const { return {dones.begin(), dones.end()}; }
  static std::vector<float> ToFloat(const std::vector<double>& x) {
    return {x.begin(), x.end()};
  }
};

inline RandomBuffer MakeRandomBuffer(Rng& rng, int num_envs, int length,
                                     double done_rate) {
  RandomBuffer b{num_envs, length, {}, {}, {}, {}};
  const std::size_t n = static_cast<std::size_t>(num_envs) * length;
  for (std::size_t i = 0; i < n; ++i) {
    b.rewards.push_back(rng.Normal());
    b.values.push_back(rng.Normal());
    b.dones.push_back(rng.Uniform() < done_rate ? 1 : 0);
  }
  for (int e = 0; e < num_envs; ++e) b.bootstrap.push_back(rng.Normal());
  return b;
}

inline CheckResult CheckGae(int trials, std::uint64_t seed, double* max_err_out = nullptr) {
  CheckResult r;
  Rng rng(seed, 0x6AE);
  double max_err = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int envs = 1 + static_cast<int>(rng.Below(9));
    const int len = 1 + static_cast<int>(rng.Below(24));
    const RandomBuffer b = MakeRandomBuffer(rng, envs, len, 0.05 + 0.4 * rng.Uniform());
    const double lambda = rng.Uniform();
    const double gamma = 0.5 + 0.5 * rng.Uniform();
    const std::vector<double> got = GaeAdvantages(b.rewards, b.values, b.dones,
                                                  b.bootstrap, envs, len, lambda, gamma);
    const auto want = oracle::DirectGae(b.rewards, b.values, b.dones_int(), b.bootstrap,
                                        envs, len, lambda, gamma);
    // The float path used in training, to float resolution.
    const auto values32 = RandomBuffer::ToFloat(b.values);
    const GaeResult got32 =
        ComputeGae(RandomBuffer::ToFloat(b.rewards), values32, b.dones,
                   RandomBuffer::ToFloat(b.bootstrap), envs, len, lambda, gamma);
    for (std::size_t i = 0; i < want.size(); ++i) {
      const double err = std::abs(got[i] - want[i]);
      max_err = std::max(max_err, err);
      if (err > 1e-6) r.Fail("advantage " + std::to_string(i) + " off by " + std::to_string(err));
      const double tol32 = 1e-5 * (1 + std::abs(want[i]));
      if (std::abs(got32.advantages[i] - want[i]) > tol32 ||
          std::abs(got32.returns[i] - (got32.advantages[i] + values32[i])) > tol32) {
        r.Fail("float advantage or return " + std::to_string(i));
      }
    }
  }
  // lambda = 0: one-step TD error. lambda = gamma = 1 on complete episodes:
  // discounted return minus value, i.e. the episode's reward sum minus V.
  for (int trial = 0; trial < trials; ++trial) {
    const int envs = 3, len = 17;
    RandomBuffer b = MakeRandomBuffer(rng, envs, len, 0.3);
    for (int e = 0; e < envs; ++e) b.dones[static_cast<std::size_t>(len - 1) * envs + e] = 1;
    const double gamma = 0.9;
    const auto td =
        GaeAdvantages(b.rewards, b.values, b.dones, b.bootstrap, envs, len, 0.0, gamma);
    const auto mc =
        GaeAdvantages(b.rewards, b.values, b.dones, b.bootstrap, envs, len, 1.0, 1.0);
    for (int e = 0; e < envs; ++e) {
      for (int t = 0; t < len; ++t) {
        const std::size_t i = static_cast<std::size_t>(t) * envs + e;
        const double next = b.dones[i] ? 0.0 : b.values[i + envs];
        if (td[i] != b.rewards[i] + gamma * next - b.values[i]) {
          r.Fail("lambda=0 reduction at t=" + std::to_string(t));
        }
        double sum = 0;
        for (int k = t; k < len; ++k) {
          const std::size_t j = static_cast<std::size_t>(k) * envs + e;
          sum += b.rewards[j];
          if (b.dones[j]) break;
        }
        if (std::abs(mc[i] - (sum - b.values[i])) > 1e-12) {
          r.Fail("lambda=1 reduction at t=" + std::to_string(t));
        }
      }
    }
  }
  if (max_err_out) *max_err_out = max_err;
  return r;
}

}  // namespace brl::checks

#endif  // BRL_TESTS_PROPERTY_CHECKS_H_
