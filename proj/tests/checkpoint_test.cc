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

#include "brl/checkpoint.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "brl/io.h"

namespace brl {
namespace {

Checkpoint Sample(bool with_adam) {
  Checkpoint c = InitialCheckpoint(GameVariant::Reduced(5), 8, 2, 17);
  if (with_adam) {
    AdamState<float> a = AdamState<float>::Fresh(c.config, AdamConfig{3e-4, 0.9, 0.99, 1e-7, 1.0});
    a.step = 41;
    a.m.policy.bias(2) = 0.25f;
    a.v.value.weight(0, 3) = 7.5f;
    c.adam = a;
  }
  c.provenance.stage = "RL";
  c.provenance.update_step = 41;
  return c;
}

TEST(CheckpointTest, InitialCheckpointShape) {
  const Checkpoint c = InitialCheckpoint(GameVariant::Reduced(5), 64, 4, 1);
  EXPECT_EQ(c.config.input_width, 328);
  EXPECT_EQ(c.config.policy_width, 28);
  EXPECT_EQ(c.config.hidden_width, 64);
  EXPECT_EQ(c.provenance.stage, "init");
  EXPECT_EQ(c.provenance.variant, GameVariant::Reduced(5));
  EXPECT_TRUE(SameCheckpoint(c, InitialCheckpoint(GameVariant::Reduced(5), 64, 4, 1)));
  EXPECT_FALSE(SameCheckpoint(c, InitialCheckpoint(GameVariant::Reduced(5), 64, 4, 2)));
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  for (bool adam : {false, true}) {
    const Checkpoint c = Sample(adam);
    const std::string bytes = SerializeCheckpoint(c);
    const Checkpoint back = DeserializeCheckpoint(bytes);
    EXPECT_TRUE(SameCheckpoint(c, back));
    EXPECT_EQ(back.provenance, c.provenance);
    EXPECT_EQ(back.adam.has_value(), adam);
    if (adam) {
      EXPECT_EQ(back.adam->step, 41);
      EXPECT_EQ(back.adam->m.policy.bias(2), 0.25f);
      EXPECT_EQ(back.adam->v.value.weight(0, 3), 7.5f);
      EXPECT_EQ(back.adam->config.beta2, 0.99);
    }
    EXPECT_EQ(SerializeCheckpoint(back), bytes);
  }
}

TEST(CheckpointTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "brl_ckpt_roundtrip.bin";
  const Checkpoint c = Sample(true);
  StoreCheckpoint(c, path);
  EXPECT_TRUE(SameCheckpoint(LoadCheckpoint(path), c));
  std::filesystem::remove(path);
  EXPECT_THROW(LoadCheckpoint(path), DataError);
}

TEST(CheckpointTest, RejectsCorruption) {
  const std::string bytes = SerializeCheckpoint(Sample(true));
  std::string bad_magic = bytes;
  bad_magic[0] ^= 0x20;
  EXPECT_THROW(DeserializeCheckpoint(bad_magic), DataError);

  std::string bad_version = bytes;
  bad_version[4] = 9;
  try {
    DeserializeCheckpoint(bad_version);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }

  EXPECT_THROW(DeserializeCheckpoint(bytes.substr(0, 10)), DataError);
  EXPECT_THROW(DeserializeCheckpoint(bytes.substr(0, 40)), DataError);
  EXPECT_THROW(DeserializeCheckpoint(bytes.substr(0, bytes.size() - 4)), DataError);
  EXPECT_THROW(DeserializeCheckpoint(bytes + "xxxx"), DataError);
}

TEST(CheckpointTest, ParamsMustMatchConfig) {
  Checkpoint c = Sample(false);
  c.config.hidden_width = 9;
  EXPECT_THROW(SerializeCheckpoint(c), ContractViolation);
}

}  // namespace
}  // namespace brl
