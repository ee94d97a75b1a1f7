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

// Checkpoint file layout (all integers little-endian):
//
//   bytes 0..3    magic "BRLC"
//   bytes 4..7    uint32 format version (currently 1)
//   bytes 8..15   uint64 metadata length L
//   next L bytes  UTF-8 JSON metadata: {"config", "provenance",
//                 "param_count", "adam"} where "adam" is null or
//                 {"learning_rate", "beta1", "beta2", "epsilon",
//                  "max_grad_norm", "step"}
//   payload       param_count float32 values in PolicyValueParams storage
//                 order (trunk layers, policy head, value head; weight then
//                 bias; weights column-major out x in), followed by the Adam
//                 first and second moments in the same order when present.
//
// The file must end exactly after the payload.

#ifndef BRL_CHECKPOINT_H_
#define BRL_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "brl/common.h"
#include "brl/nn.h"

namespace brl {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Provenance {
  std::string stage = "init";  // "init", "SL" or "RL"
  std::int64_t update_step = 0;
  std::uint64_t seed = 0;
  GameVariant variant;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Checkpoint {
  NetConfig config;
  PolicyValueParams<float> params;
  std::optional<AdamState<float>> adam;
  Provenance provenance;
};

// Bitwise equality of every field, including the float payload.
bool SameCheckpoint(const Checkpoint& a, const Checkpoint& b);

std::string SerializeCheckpoint(const Checkpoint& checkpoint);
Checkpoint DeserializeCheckpoint(std::string_view bytes);

void StoreCheckpoint(const Checkpoint& checkpoint,
                     const std::filesystem::path& path);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// Fresh randomly initialised network.
Checkpoint InitialCheckpoint(const GameVariant& variant, int hidden_width,
                             int hidden_layers, std::uint64_t seed);

}  // namespace brl

#endif  // BRL_CHECKPOINT_H_
