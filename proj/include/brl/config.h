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

// Run configuration shared by every subcommand. Two named profiles provide
// defaults ("desk" and "paper"); a config file overrides them and command
// line flags override the file.
//
// Files are either JSON or the following TOML subset: `# comments`,
// `[section]` headers, and `key = value` lines whose value is an integer,
// float, boolean, double-quoted string or a one-line array of integers.
//
//   profile = "desk"          # applied first, before any other key
//   variant = "n5"
//   seed = 0
//   hidden_width = 64
//   hidden_layers = 4
//   workers = 1
//   reproducible = true
//   [sl]    learning_rate batch_size epochs eval_every max_grad_norm
//   [ppo]   num_envs rollout_length gae_lambda discount clip_ratio
//           value_coef entropy_coef minibatch_size learning_rate
//           update_steps epochs_per_update max_grad_norm
//           normalize_advantages clip_value_loss
//   [fsp]   enabled snapshot_every
//   [rl]    checkpoint_steps
//   [eval]  boards
//
// Unknown keys are errors.

#ifndef BRL_CONFIG_H_
#define BRL_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "brl/common.h"
#include "brl/rl.h"
#include "brl/sl.h"

namespace brl {

struct RunConfig {
  std::string profile = "desk";
  GameVariant variant = GameVariant::Reduced(5);
  std::uint64_t seed = 0;
  int hidden_width = 64;
  int hidden_layers = 4;
  int workers = 1;
  bool reproducible = true;
  SlConfig sl;
  PpoConfig ppo;
  FspConfig fsp;
  std::vector<int> checkpoint_steps;
  int eval_boards = 2000;

  static RunConfig Desk();
  static RunConfig Paper();
  // "desk" or "paper"; ConfigError otherwise.
  static RunConfig Profile(std::string_view name);

  void Validate() const;
  // Keeps sl.seed and ppo.seed in step with `seed`.
  void SetSeed(std::uint64_t s);
};

// Parses the TOML subset above into the equivalent JSON text.
std::string TomlToJson(std::string_view toml);

// Applies a config document (JSON or TOML subset, detected from the first
// non-blank character) on top of `base`; a "profile" key first resets the
// base to that profile.
RunConfig ApplyConfigText(const RunConfig& base, std::string_view text);
RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const RunConfig& base = RunConfig::Desk());

// Full TOML rendering; ApplyConfigText(any, ToToml(c)) reproduces c.
std::string ToToml(const RunConfig& config);

}  // namespace brl

#endif  // BRL_CONFIG_H_
