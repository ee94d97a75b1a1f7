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

#include <bit>
#include <cstring>

#include "brl/io.h"
#include "json.hpp"

namespace brl {
namespace {

using json = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little,
              "checkpoint IO assumes a little-endian host");

constexpr char kMagic[4] = {'B', 'R', 'L', 'C'};

template <typename U>
void PutLe(std::string& out, U value) {
  char bytes[sizeof(U)];
  std::memcpy(bytes, &value, sizeof(U));
  out.append(bytes, sizeof(U));
}

template <typename U>
U GetLe(std::string_view bytes, std::size_t offset) {
  U value;
  std::memcpy(&value, bytes.data() + offset, sizeof(U));
  return value;
}

void PutFloats(std::string& out, const PolicyValueParams<float>& p) {
  p.ForEachTensor([&](std::span<const float> s) {
    out.append(reinterpret_cast<const char*>(s.data()), s.size_bytes());
  });
}

std::size_t GetFloats(std::string_view bytes, std::size_t offset,
                      PolicyValueParams<float>& p) {
  p.ForEachTensor([&](std::span<float> s) {
    std::memcpy(s.data(), bytes.data() + offset, s.size_bytes());
    offset += s.size_bytes();
  });
  return offset;
}

json ConfigToJson(const NetConfig& c) {
  return {{"input_width", c.input_width},
          {"hidden_layers", c.hidden_layers},
          {"hidden_width", c.hidden_width},
          {"policy_width", c.policy_width}};
}

bool SameBits(const PolicyValueParams<float>& a,
              const PolicyValueParams<float>& b) {
  if (a.Config() != b.Config()) return false;
  const auto fa = a.Flatten();
  const auto fb = b.Flatten();
  return fa.size() == fb.size() &&
         std::memcmp(fa.data(), fb.data(), fa.size() * sizeof(float)) == 0;
}

}  // namespace

bool SameCheckpoint(const Checkpoint& a, const Checkpoint& b) {
  if (a.config != b.config || !(a.provenance == b.provenance)) return false;
  if (!SameBits(a.params, b.params)) return false;
  if (a.adam.has_value() != b.adam.has_value()) return false;
  if (a.adam) {
    const auto& x = *a.adam;
    const auto& y = *b.adam;
    if (x.step != y.step || x.config.learning_rate != y.config.learning_rate ||
        x.config.beta1 != y.config.beta1 || x.config.beta2 != y.config.beta2 ||
        x.config.epsilon != y.config.epsilon ||
        x.config.max_grad_norm != y.config.max_grad_norm) {
      return false;
    }
    if (!SameBits(x.m, y.m) || !SameBits(x.v, y.v)) return false;
  }
  return true;
}

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  if (checkpoint.params.Config() != checkpoint.config) {
    throw ContractViolation("checkpoint parameters do not match its config");
  }
  json meta;
  meta["config"] = ConfigToJson(checkpoint.config);
  meta["provenance"] = {{"stage", checkpoint.provenance.stage},
                        {"update_step", checkpoint.provenance.update_step},
                        {"seed", checkpoint.provenance.seed},
                        {"variant", checkpoint.provenance.variant.Name()}};
  meta["param_count"] = checkpoint.params.NumParams();
  if (checkpoint.adam) {
    const auto& a = *checkpoint.adam;
    meta["adam"] = {{"learning_rate", a.config.learning_rate},
                    {"beta1", a.config.beta1},
                    {"beta2", a.config.beta2},
                    {"epsilon", a.config.epsilon},
                    {"max_grad_norm", a.config.max_grad_norm},
                    {"step", a.step}};
  } else {
    meta["adam"] = nullptr;
  }
  const std::string meta_text = meta.dump();

  std::string out(kMagic, sizeof(kMagic));
  PutLe<std::uint32_t>(out, kCheckpointVersion);
  PutLe<std::uint64_t>(out, meta_text.size());
  out += meta_text;
  PutFloats(out, checkpoint.params);
  if (checkpoint.adam) {
    PutFloats(out, checkpoint.adam->m);
    PutFloats(out, checkpoint.adam->v);
  }
  return out;
}

Checkpoint DeserializeCheckpoint(std::string_view bytes) {
  if (bytes.size() < 16) throw DataError("checkpoint truncated in header");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw DataError("not a checkpoint (bad magic)");
  }
  const auto version = GetLe<std::uint32_t>(bytes, 4);
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version) +
                    " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  const auto meta_len = GetLe<std::uint64_t>(bytes, 8);
  if (meta_len > bytes.size() - 16) {
    throw DataError("checkpoint truncated in metadata");
  }
  json meta;
  try {
    meta = json::parse(bytes.substr(16, meta_len));
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  }

  Checkpoint c;
  try {
    const json& cfg = meta.at("config");
    c.config.input_width = cfg.at("input_width").get<int>();
    c.config.hidden_layers = cfg.at("hidden_layers").get<int>();
    c.config.hidden_width = cfg.at("hidden_width").get<int>();
    c.config.policy_width = cfg.at("policy_width").get<int>();
    const json& prov = meta.at("provenance");
    c.provenance.stage = prov.at("stage").get<std::string>();
    c.provenance.update_step = prov.at("update_step").get<std::int64_t>();
    c.provenance.seed = prov.at("seed").get<std::uint64_t>();
    c.provenance.variant =
        GameVariant::Parse(prov.at("variant").get<std::string>());
  } catch (const json::exception& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("checkpoint metadata: ") + e.what());
  }
  try {
    c.config.Validate();
  } catch (const ConfigError& e) {
    throw DataError(std::string("checkpoint config: ") + e.what());
  }
  c.params = PolicyValueParams<float>::Zeros(c.config);
  const std::size_t count = c.params.NumParams();
  if (meta.value("param_count", std::size_t{0}) != count) {
    throw DataError("checkpoint header declares " +
                    meta.value("param_count", json(0)).dump() +
                    " parameters but the config implies " +
                    std::to_string(count));
  }
  const bool has_adam = meta.contains("adam") && !meta["adam"].is_null();
  const std::size_t payload = count * sizeof(float) * (has_adam ? 3 : 1);
  const std::size_t expected = 16 + meta_len + payload;
  if (bytes.size() != expected) {
    throw DataError("checkpoint payload is " +
                    std::to_string(bytes.size() - 16 - meta_len) +
                    " bytes, header implies " + std::to_string(payload));
  }
  std::size_t offset = GetFloats(bytes, 16 + meta_len, c.params);
  if (has_adam) {
    AdamState<float> a = AdamState<float>::Fresh(c.config, {});
    try {
      const json& j = meta.at("adam");
      a.config.learning_rate = j.at("learning_rate").get<double>();
      a.config.beta1 = j.at("beta1").get<double>();
      a.config.beta2 = j.at("beta2").get<double>();
      a.config.epsilon = j.at("epsilon").get<double>();
      a.config.max_grad_norm = j.at("max_grad_norm").get<double>();
      a.step = j.at("step").get<std::int64_t>();
    } catch (const json::exception& e) {
      throw DataError(std::string("checkpoint optimizer metadata: ") + e.what());
    }
    offset = GetFloats(bytes, offset, a.m);
    GetFloats(bytes, offset, a.v);
    c.adam = std::move(a);
  }
  return c;
}

void StoreCheckpoint(const Checkpoint& checkpoint,
                     const std::filesystem::path& path) {
  const std::string bytes = SerializeCheckpoint(checkpoint);
  WriteFileAtomically(
      path, [&](std::ostream& out) { out.write(bytes.data(), bytes.size()); },
      /*binary=*/true);
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  try {
    return DeserializeCheckpoint(ReadFile(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Checkpoint InitialCheckpoint(const GameVariant& variant, int hidden_width,
                             int hidden_layers, std::uint64_t seed) {
  Checkpoint c;
  c.config = NetConfig::ForVariant(variant, hidden_width, hidden_layers);
  Rng rng(seed, /*stream=*/0x1417);
  c.params = PolicyValueParams<float>::Init(c.config, rng);
  c.provenance = {"init", 0, seed, variant};
  return c;
}

}  // namespace brl
