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

// brl: command line entry point.
//
//   brl gen-deals      --count N --out deals.jsonl
//   brl gen-teacher-sl --count N --out sl.jsonl
//   brl sl             --train sl.jsonl --eval sl_eval.jsonl --out DIR
//   brl rl             --data deals.jsonl --init sl.ckpt --out DIR [--no-fsp] [--no-sl]
//   brl eval           --a A.ckpt --b B.ckpt --data deals.jsonl
//   brl tournament     --data deals.jsonl --ckpt name=path ...
//   brl inspect        --board 3 --calls "1C P"
//   brl play           --checkpoint x.ckpt --seat S
//   brl verify         FILE
//
// Every subcommand accepts --seed, --config and --profile. Failures print a
// single line to stderr:
//
//   error: kind=<config|data|numeric|capability|contract|internal> code=<n> message="..."
//
// and exit with 2 (config), 3 (data or contract), 4 (numeric) or 1.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brl/checkpoint.h"
#include "brl/config.h"
#include "brl/dds.h"
#include "brl/evaluation.h"
#include "brl/features.h"
#include "brl/io.h"
#include "brl/policy.h"
#include "brl/rl.h"
#include "brl/sl.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace brl {
namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kNumeric = 4 };

std::atomic<bool> g_interrupted{false};

extern "C" void OnSignal(int) { g_interrupted.store(true); }

int Fail(const std::string& kind, int code, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += c;
  }
  std::cerr << "error: kind=" << kind << " code=" << code << " message=\"" << escaped
            << "\"\n";
  return code;
}

// Options shared by every subcommand.
struct Common {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string profile;
  std::string variant;

  void Register(CLI::App* app, bool with_variant) {
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--config", config_path, "TOML or JSON run configuration");
    app->add_option("--profile", profile, "Base profile: desk or paper");
    if (with_variant) app->add_option("--variant", variant, "standard or nK (3 <= K <= 12)");
  }

  // Profile, then file, then flags.
  RunConfig Resolve() const {
    RunConfig c = profile.empty() ? RunConfig::Desk() : RunConfig::Profile(profile);
    if (!config_path.empty()) c = LoadRunConfig(config_path, c);
    if (seed) c.SetSeed(*seed);
    if (!variant.empty()) c.variant = GameVariant::Parse(variant);
    c.Validate();
    return c;
  }
};

void WriteRunConfig(const RunConfig& c, const fs::path& path, const std::string& note) {
  WriteFileAtomically(path, [&](std::ostream& out) {
    out << "# " << note << "\n" << ToToml(c);
  });
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::vector<Call> ParseCalls(const std::string& text, const GameVariant& v) {
  std::vector<Call> calls;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) calls.push_back(Call::Parse(tok, v));
  return calls;
}

// ---------------------------------------------------------------------------

struct GenDealsArgs {
  Common common;
  long long count = 0;
  long long first_board = 1;
  std::string out;
};

int GenDeals(const GenDealsArgs& a) {
  const RunConfig c = a.common.Resolve();
  if (a.count <= 0) throw ConfigError("--count must be positive");
  const GameVariant& v = c.variant;
  const bool solve = v.ranks_per_suit <= kMaxSolvableRanks;
  if (solve) {
    std::vector<DdsRecord> records;
    records.reserve(static_cast<std::size_t>(a.count));
    for (long long i = 0; i < a.count; ++i) {
      const Deal d = GenerateDeal(c.seed, v, a.first_board + i);
      records.push_back({d, FullTable(d)});
    }
    StoreDdsDataset(records, a.out);
  } else {
    // Too large to solve: deals only.
    WriteFileAtomically(a.out, [&](std::ostream& out) {
      for (long long i = 0; i < a.count; ++i) {
        const Deal d = GenerateDeal(c.seed, v, a.first_board + i);
        nlohmann::json j;
        j["deal"] = FormatDeal(d);
        j["dealer"] = std::string(1, SeatChar(d.dealer));
        j["vul"] = VulnerabilityName(d.vulnerability);
        out << j.dump() << '\n';
      }
    });
  }
  std::cout << "wrote " << a.count << " " << v.Name() << " deals"
            << (solve ? " with double-dummy tables" : "") << " to " << a.out << "\n";
  return kOk;
}

struct GenTeacherArgs {
  Common common;
  long long count = 0;
  long long first_board = 1;
  std::string out;
};

int GenTeacher(const GenTeacherArgs& a) {
  const RunConfig c = a.common.Resolve();
  if (a.count <= 0) throw ConfigError("--count must be positive");
  const auto records = GenerateTeacherDataset(c.seed, static_cast<std::size_t>(a.count),
                                              c.variant, a.first_board);
  StoreSlDataset(records, a.out);
  std::cout << "wrote " << records.size() << " teacher auctions to " << a.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct SlArgs {
  Common common;
  std::string train, eval, out, init;
  std::optional<int> epochs;
  std::optional<double> lr;
};

int Sl(const SlArgs& a) {
  RunConfig c = a.common.Resolve();
  if (a.epochs) c.sl.epochs = *a.epochs;
  if (a.lr) c.sl.learning_rate = *a.lr;
  c.Validate();
  const auto train = LoadSlDataset(a.train);
  const auto eval = a.eval.empty() ? std::vector<SlBoardRecord>{} : LoadSlDataset(a.eval);
  if (train.empty()) throw DataError("training set is empty");
  if (!(train.front().deal.variant == c.variant)) {
    throw ConfigError("training set variant " + train.front().deal.variant.Name() +
                      " does not match configured variant " + c.variant.Name());
  }
  const Checkpoint init = a.init.empty()
                              ? InitialCheckpoint(c.variant, c.hidden_width,
                                                  c.hidden_layers, c.seed)
                              : LoadCheckpoint(a.init);
  EnsureDir(a.out);
  WriteRunConfig(c, fs::path(a.out) / "run_config.toml", "brl sl");
  SlHooks hooks;
  hooks.on_epoch = [](const SlEpochMetrics& m) {
    std::cout << "epoch " << m.epoch << " train_loss " << m.train_loss;
    if (m.eval_loss) std::cout << " eval_loss " << *m.eval_loss << " eval_acc " << *m.eval_acc;
    std::cout << std::endl;
  };
  const SlResult r = SlTrain(train, eval, c.sl, init, hooks);
  StoreCheckpoint(r.checkpoint, fs::path(a.out) / "sl.ckpt");
  WriteSlMetricsCsv(r.metrics, fs::path(a.out) / "metrics.csv");
  if (!eval.empty()) {
    const SlEvalResult e = SlEval(r.checkpoint.params, eval);
    std::printf("held-out accuracy %.4f, cross-entropy %.4f over %zu pairs\n", e.accuracy,
                e.cross_entropy, e.pairs);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RlArgs {
  Common common;
  std::string data, init, out;
  bool no_fsp = false;
  bool no_sl = false;
  std::optional<int> updates;
  std::optional<double> lr;
};

int Rl(const RlArgs& a) {
  RunConfig c = a.common.Resolve();
  if (a.updates) c.ppo.update_steps = *a.updates;
  if (a.lr) c.ppo.learning_rate = *a.lr;
  if (a.no_fsp) c.fsp.enabled = false;
  std::string note = "brl rl";
  if (a.no_sl) {
    if (!a.init.empty()) throw ConfigError("--no-sl trains from scratch; drop --init");
    ApplyNoSlAblation(c.ppo);
    for (int& s : c.checkpoint_steps) s *= 2;
    note += " --no-sl (learning rate and step scaling already applied below)";
  } else if (a.init.empty()) {
    throw ConfigError("--init is required unless --no-sl is given");
  }
  if (a.no_fsp) note += " --no-fsp";
  c.Validate();
  const auto data = LoadDdsDataset(a.data);
  const Checkpoint start =
      a.no_sl ? InitialCheckpoint(c.variant, c.hidden_width, c.hidden_layers, c.seed)
              : LoadCheckpoint(a.init);
  if (!(start.provenance.variant == c.variant)) {
    throw ConfigError("checkpoint variant " + start.provenance.variant.Name() +
                      " does not match configured variant " + c.variant.Name());
  }
  const fs::path dir(a.out);
  EnsureDir(dir);
  WriteRunConfig(c, dir / "run_config.toml", note);

  RlOptions o;
  o.ppo = c.ppo;
  o.fsp = c.fsp;
  o.checkpoint_steps = c.checkpoint_steps;
  o.dump_path = dir / "numeric_failure.ckpt";
  o.log = [](const std::string& s) { std::cout << s << std::endl; };
  o.on_update = [&](const RlMetrics& m) {
    if (m.update % 10 == 0 || m.update == 1) {
      std::printf("update %d mean_reward %+.4f entropy %.3f kl %.5f pool %zu\n", m.update,
                  m.mean_reward, m.entropy, m.approx_kl, m.pool_size);
      std::fflush(stdout);
    }
  };
  o.on_checkpoint = [&](const Checkpoint& ck) {
    StoreCheckpoint(ck, dir / ("step_" + std::to_string(ck.provenance.stage == "RL"
                                                            ? ck.provenance.update_step
                                                            : 0) +
                               ".ckpt"));
  };
  o.should_stop = [] { return g_interrupted.load(); };
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  const RlResult r = FspTrain(start, data, o);
  std::signal(SIGINT, SIG_DFL);
  std::signal(SIGTERM, SIG_DFL);
  StoreCheckpoint(r.final_checkpoint, dir / "final.ckpt");
  WriteRlMetricsCsv(r.metrics, dir / "metrics.csv");
  std::cout << (r.stopped_early ? "interrupted after " : "finished ") << r.updates_done
            << " updates, " << r.transitions << " learner transitions\n";
  if (r.reward_violations != 0) {
    throw NumericError(std::to_string(r.reward_violations) +
                       " transitions broke the reward placement rule");
  }
  return kOk;
}

// ---------------------------------------------------------------------------

std::size_t BoardsFor(const RunConfig& c, std::optional<long long> flag,
                      std::size_t available) {
  const long long n = flag ? *flag : std::min<long long>(c.eval_boards, available);
  if (n <= 0) throw ConfigError("--boards must be positive");
  return static_cast<std::size_t>(n);
}

struct EvalArgs {
  Common common;
  std::string a, b, data, json_out, csv_out;
  std::optional<long long> boards;
};

int Eval(const EvalArgs& a) {
  const RunConfig c = a.common.Resolve();
  const auto data = LoadDdsDataset(a.data);
  const Checkpoint ca = LoadCheckpoint(a.a);
  const Checkpoint cb = LoadCheckpoint(a.b);
  const MatchResult m = DuplicateMatch(ca, cb, data, BoardsFor(c, a.boards, data.size()));
  std::cout << fs::path(a.a).filename().string() << " vs "
            << fs::path(a.b).filename().string() << ": "
            << FormatImps(m.imps_per_board, m.standard_error) << " IMPs/board over "
            << m.boards << " boards\n";
  if (!a.json_out.empty() || !a.csv_out.empty()) {
    if (a.json_out.empty() || a.csv_out.empty()) {
      throw ConfigError("--json and --csv must be given together");
    }
    WriteMatchReport(m, a.json_out, a.csv_out);
  }
  return kOk;
}

struct TournamentArgs {
  Common common;
  std::string data, matrix_out, long_out;
  std::vector<std::string> checkpoints;
  std::optional<long long> boards;
};

int Tournament(const TournamentArgs& a) {
  const RunConfig c = a.common.Resolve();
  if (a.checkpoints.size() < 2) throw ConfigError("need at least two --ckpt entries");
  std::vector<std::pair<std::string, Checkpoint>> entries;
  for (const std::string& spec : a.checkpoints) {
    const auto eq = spec.find('=');
    const std::string label =
        eq == std::string::npos ? fs::path(spec).stem().string() : spec.substr(0, eq);
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    entries.emplace_back(label, LoadCheckpoint(path));
  }
  const auto data = LoadDdsDataset(a.data);
  const TournamentMatrix t = RoundRobin(entries, data, BoardsFor(c, a.boards, data.size()));
  std::printf("%-12s", "tanh(IMPs)");
  for (const auto& l : t.labels) std::printf(" %10s", l.c_str());
  std::printf("\n");
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    std::printf("%-12s", t.labels[i].c_str());
    for (std::size_t j = 0; j < t.labels.size(); ++j) std::printf(" %+10.3f", t.scaled[i][j]);
    std::printf("\n");
  }
  if (!a.matrix_out.empty() || !a.long_out.empty()) {
    if (a.matrix_out.empty() || a.long_out.empty()) {
      throw ConfigError("--matrix and --long must be given together");
    }
    WriteTournament(t, a.matrix_out, a.long_out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

// A board either from a DDS dataset (1-based) or generated from the seed.
DdsRecord PickBoard(const RunConfig& c, const std::string& data, long long board,
                    bool need_table) {
  if (board < 1) throw ConfigError("--board is 1-based");
  if (!data.empty()) {
    const auto records = LoadDdsDataset(data);
    if (static_cast<std::size_t>(board) > records.size()) {
      throw ConfigError("--board " + std::to_string(board) + " but the dataset holds " +
                        std::to_string(records.size()));
    }
    return records[static_cast<std::size_t>(board - 1)];
  }
  DdsRecord r;
  r.deal = GenerateDeal(c.seed, c.variant, board);
  if (need_table) r.table = FullTable(r.deal);
  return r;
}

struct InspectArgs {
  Common common;
  std::string data, calls, checkpoint;
  long long board = 1;
};

int Inspect(const InspectArgs& a) {
  const RunConfig c = a.common.Resolve();
  const DdsRecord rec = PickBoard(c, a.data, a.board, false);
  const GameVariant& v = rec.deal.variant;
  const AuctionState state =
      AuctionState::FromHistory(v, rec.deal.dealer, ParseCalls(a.calls, v));
  std::cout << "Deal: " << FormatDeal(rec.deal) << "\n";
  std::cout << "Dealer " << SeatChar(rec.deal.dealer) << ", vulnerable "
            << VulnerabilityName(rec.deal.vulnerability) << "\n";
  if (state.IsTerminal()) {
    std::cout << "Auction complete: " << state.FinalContract().ToString() << "\n";
    return kOk;
  }
  const Observation obs = Encode(state, rec.deal);
  std::cout << "Observation for " << SeatChar(obs.to_act) << " (" << v.feature_width()
            << " features)\n"
            << DescribeObservation(obs, v);
  if (!a.checkpoint.empty()) {
    const Checkpoint ck = LoadCheckpoint(a.checkpoint);
    if (!(ck.provenance.variant == v)) throw ConfigError("checkpoint variant mismatch");
    Matrix<float> x(v.feature_width(), 1);
    for (int k = 0; k < v.feature_width(); ++k) x(k, 0) = obs.bits[k];
    const auto f = Forward(ck.params, x, std::vector<CallMask>{obs.mask});
    std::cout << "Policy (legal calls), value " << f.values(0) << ":\n";
    for (int i = 0; i < v.action_count(); ++i) {
      if (!obs.mask.test(i)) continue;
      std::printf("  %-3s %.4f\n", Call(i).ToString().c_str(), f.probs(i, 0));
    }
  }
  return kOk;
}

struct PlayArgs {
  Common common;
  std::string data, checkpoint, seat = "S";
  long long board = 1;
};

int Play(const PlayArgs& a) {
  const RunConfig c = a.common.Resolve();
  const Checkpoint ck = LoadCheckpoint(a.checkpoint);
  RunConfig cc = c;
  cc.variant = ck.provenance.variant;
  const DdsRecord rec = PickBoard(cc, a.data, a.board, true);
  PlayConsole(ck, ParseSeat(a.seat), rec, std::cin, std::cout);
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string path;
};

int Verify(const VerifyArgs& a) {
  a.common.Resolve();
  const std::string bytes = ReadFile(a.path);
  if (bytes.rfind("BRLC", 0) == 0) {
    const Checkpoint ck = LoadCheckpoint(a.path);
    std::cout << "checkpoint ok: " << ck.provenance.variant.Name() << ", stage "
              << ck.provenance.stage << ", update " << ck.provenance.update_step << "\n";
    return kOk;
  }
  const auto lines = ReadLines(a.path);
  if (lines.empty()) throw DataError("empty file");
  nlohmann::json first;
  try {
    first = nlohmann::json::parse(lines.front());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed JSON: ") + e.what(), 1);
  }
  if (first.contains("actions")) {
    const auto records = LoadSlDataset(a.path);
    std::cout << "ok: " << records.size() << " auctions replay legally\n";
    return kOk;
  }
  if (!first.contains("dds")) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto j = nlohmann::json::parse(lines[i], nullptr, false);
      if (j.is_discarded() || !j.contains("deal")) {
        throw DataError("not a deal record", static_cast<long>(i + 1));
      }
      try {
        ParseDeal(j["deal"].get<std::string>(), ParseSeat(j["dealer"].get<std::string>()),
                  ParseVulnerability(j["vul"].get<std::string>()));
      } catch (const std::exception& e) {
        throw DataError(e.what(), static_cast<long>(i + 1));
      }
    }
    std::cout << "ok: " << lines.size() << " deals (no tables to check)\n";
    return kOk;
  }
  const auto records = LoadDdsDataset(a.path);
  const auto bad = VerifyDdsRecords(records);
  if (!bad.empty()) {
    const DdsMismatch& m = bad.front();
    throw DataError(std::to_string(bad.size()) + " table entries disagree with the solver; first: " +
                        "declarer " + SeatChar(m.declarer) + " strain " +
                        StrainChar(m.strain) + " stored " + std::to_string(m.stored) +
                        " solved " + std::to_string(m.solved),
                    static_cast<long>(m.record + 1));
  }
  std::cout << "ok: " << records.size() << " records, every table matches the solver\n";
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Bridge bidding lab: datasets, training and evaluation"};
  app.require_subcommand(1);

  GenDealsArgs gd;
  auto* c_gd = app.add_subcommand("gen-deals", "Deals with double-dummy tables (JSONL)");
  gd.common.Register(c_gd, true);
  c_gd->add_option("--count", gd.count)->required();
  c_gd->add_option("--first-board", gd.first_board);
  c_gd->add_option("--out", gd.out)->required();

  GenTeacherArgs gt;
  auto* c_gt = app.add_subcommand("gen-teacher-sl", "Rule-based teacher auctions (JSONL)");
  gt.common.Register(c_gt, true);
  c_gt->add_option("--count", gt.count)->required();
  c_gt->add_option("--first-board", gt.first_board);
  c_gt->add_option("--out", gt.out)->required();

  SlArgs sl;
  auto* c_sl = app.add_subcommand("sl", "Supervised pretraining");
  sl.common.Register(c_sl, true);
  c_sl->add_option("--train", sl.train)->required();
  c_sl->add_option("--eval", sl.eval);
  c_sl->add_option("--out", sl.out, "Output directory")->required();
  c_sl->add_option("--init", sl.init, "Start from this checkpoint");
  c_sl->add_option("--epochs", sl.epochs);
  c_sl->add_option("--lr", sl.lr);

  RlArgs rl;
  auto* c_rl = app.add_subcommand("rl", "PPO self-play with an opponent pool");
  rl.common.Register(c_rl, true);
  c_rl->add_option("--data", rl.data, "DDS dataset")->required();
  c_rl->add_option("--init", rl.init, "Starting checkpoint (usually the SL model)");
  c_rl->add_option("--out", rl.out, "Output directory")->required();
  c_rl->add_flag("--no-fsp", rl.no_fsp, "Opponent is the previous learner only");
  c_rl->add_flag("--no-sl", rl.no_sl, "Random start, 10x learning rate, 2x updates");
  c_rl->add_option("--updates", rl.updates);
  c_rl->add_option("--lr", rl.lr);

  EvalArgs ev;
  auto* c_ev = app.add_subcommand("eval", "Duplicate match between two checkpoints");
  ev.common.Register(c_ev, false);
  c_ev->add_option("--a", ev.a)->required();
  c_ev->add_option("--b", ev.b)->required();
  c_ev->add_option("--data", ev.data, "DDS dataset")->required();
  c_ev->add_option("--boards", ev.boards);
  c_ev->add_option("--json", ev.json_out);
  c_ev->add_option("--csv", ev.csv_out);

  TournamentArgs tn;
  auto* c_tn = app.add_subcommand("tournament", "Round robin between checkpoints");
  tn.common.Register(c_tn, false);
  c_tn->add_option("--data", tn.data, "DDS dataset")->required();
  c_tn->add_option("--ckpt", tn.checkpoints, "label=path, repeated")->required();
  c_tn->add_option("--boards", tn.boards);
  c_tn->add_option("--matrix", tn.matrix_out);
  c_tn->add_option("--long", tn.long_out);

  InspectArgs in;
  auto* c_in = app.add_subcommand("inspect", "Print the observation after an auction prefix");
  in.common.Register(c_in, true);
  c_in->add_option("--data", in.data, "Take the board from this DDS dataset");
  c_in->add_option("--board", in.board);
  c_in->add_option("--calls", in.calls, "e.g. \"1C P 1H\"");
  c_in->add_option("--checkpoint", in.checkpoint, "Also print this policy");

  PlayArgs pl;
  auto* c_pl = app.add_subcommand("play", "Bid one board against a checkpoint");
  pl.common.Register(c_pl, false);
  c_pl->add_option("--checkpoint", pl.checkpoint)->required();
  c_pl->add_option("--seat", pl.seat);
  c_pl->add_option("--data", pl.data);
  c_pl->add_option("--board", pl.board);

  VerifyArgs vf;
  auto* c_vf = app.add_subcommand("verify", "Check a dataset or checkpoint");
  vf.common.Register(c_vf, false);
  c_vf->add_option("path", vf.path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail("config", kConfig, e.what());
  }

  try {
    if (*c_gd) return GenDeals(gd);
    if (*c_gt) return GenTeacher(gt);
    if (*c_sl) return Sl(sl);
    if (*c_rl) return Rl(rl);
    if (*c_ev) return Eval(ev);
    if (*c_tn) return Tournament(tn);
    if (*c_in) return Inspect(in);
    if (*c_pl) return Play(pl);
    if (*c_vf) return Verify(vf);
  } catch (const ConfigError& e) {
    return Fail("config", kConfig, e.what());
  } catch (const CapabilityError& e) {
    return Fail("capability", kConfig, e.what());
  } catch (const DataError& e) {
    return Fail("data", kData, e.what());
  } catch (const ContractViolation& e) {
    return Fail("contract", kData, e.what());
  } catch (const NumericError& e) {
    return Fail("numeric", kNumeric, e.what());
  } catch (const std::exception& e) {
    return Fail("internal", kInternal, e.what());
  }
  return kInternal;
}

}  // namespace
}  // namespace brl

int main(int argc, char** argv) { return brl::Main(argc, argv); }
