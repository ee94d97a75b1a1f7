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

#include "brl/config.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <functional>
#include <sstream>

#include "brl/io.h"
#include "json.hpp"

namespace brl {
namespace {

using json = nlohmann::ordered_json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Strips a trailing comment outside of a string.
std::string_view StripComment(std::string_view s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

json ParseScalar(std::string_view v, long line) {
  auto fail = [&](const std::string& what) -> json {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
  };
  if (v.empty()) return fail("missing value");
  if (v == "true") return true;
  if (v == "false") return false;
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') return fail("unterminated string");
    try {
      return json::parse(v);
    } catch (const json::exception&) {
      return fail("bad string " + std::string(v));
    }
  }
  const bool is_float = v.find_first_of(".eE") != std::string_view::npos ||
                        v == "inf" || v == "-inf" || v == "nan";
  if (is_float) {
    try {
      std::size_t used = 0;
      const double d = std::stod(std::string(v), &used);
      if (used != v.size()) return fail("bad number " + std::string(v));
      return d;
    } catch (const std::exception&) {
      return fail("bad number " + std::string(v));
    }
  }
  if (v.front() == '-') {
    std::int64_t x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
      return fail("bad integer " + std::string(v));
    }
    return x;
  }
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    return fail("bad value " + std::string(v));
  }
  return x;
}

json ParseValue(std::string_view v, long line) {
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') {
      throw ConfigError("config line " + std::to_string(line) +
                        ": arrays must close on the same line");
    }
    json arr = json::array();
    std::string_view body = Trim(v.substr(1, v.size() - 2));
    while (!body.empty()) {
      const std::size_t comma = body.find(',');
      arr.push_back(ParseScalar(Trim(body.substr(0, comma)), line));
      if (comma == std::string_view::npos) break;
      body = Trim(body.substr(comma + 1));
    }
    return arr;
  }
  return ParseScalar(v, line);
}

template <typename T>
T Get(const json& j, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
      if (!j.is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) throw ConfigError("");
    }
    return j.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type (" +
                      std::string(j.type_name()) + ")");
  }
}

void ApplySection(const json& section, const std::string& name,
                  const std::function<void(const std::string&, const json&)>& f) {
  if (!section.is_object()) {
    throw ConfigError("config section '" + name + "' must be a table");
  }
  for (const auto& [k, v] : section.items()) f(k, v);
}

void Unknown(const std::string& key) {
  throw ConfigError("unknown config key '" + key + "'");
}

std::string Num(double d) {
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto end = std::to_chars(buf, buf + sizeof(buf), d).ptr;
  std::string s(buf, end);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

RunConfig RunConfig::Desk() {
  RunConfig c;
  c.profile = "desk";
  c.variant = GameVariant::Reduced(5);
  c.hidden_width = 64;
  c.hidden_layers = 4;
  c.sl.learning_rate = 1e-4;
  c.sl.batch_size = 128;
  c.sl.epochs = 40;
  c.ppo.num_envs = 256;
  c.ppo.learning_rate = 3e-4;
  c.ppo.update_steps = 200;
  c.fsp.snapshot_every = 20;
  c.checkpoint_steps = {0, 25, 50, 100, 200};
  c.eval_boards = 2000;
  c.SetSeed(0);
  return c;
}

RunConfig RunConfig::Paper() {
  RunConfig c;
  c.profile = "paper";
  c.variant = GameVariant::Standard();
  c.hidden_width = 1024;
  c.hidden_layers = 4;
  c.sl.learning_rate = 1e-4;
  c.sl.batch_size = 128;
  c.sl.epochs = 40;
  c.ppo.num_envs = 8192;
  c.ppo.learning_rate = 1e-6;
  c.ppo.update_steps = 10000;
  c.fsp.snapshot_every = 100;
  c.checkpoint_steps = {0, 2000, 4000, 6000, 8000, 10000};
  c.eval_boards = 1000;
  c.SetSeed(0);
  return c;
}

RunConfig RunConfig::Profile(std::string_view name) {
  if (name == "desk") return Desk();
  if (name == "paper") return Paper();
  throw ConfigError("unknown profile '" + std::string(name) +
                    "' (expected desk or paper)");
}

void RunConfig::SetSeed(std::uint64_t s) {
  seed = s;
  sl.seed = s;
  ppo.seed = s;
}

void RunConfig::Validate() const {
  try {
    variant.Validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (hidden_width < 1 || hidden_layers < 1) {
    throw ConfigError("hidden_width and hidden_layers must be positive");
  }
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (sl.batch_size <= 0 || sl.epochs < 0 || !(sl.learning_rate > 0)) {
    throw ConfigError("sl: batch_size > 0, epochs >= 0 and learning_rate > 0 required");
  }
  ppo.Validate();
  if (fsp.snapshot_every <= 0) throw ConfigError("fsp: snapshot_every must be positive");
  for (int s : checkpoint_steps) {
    if (s < 0) throw ConfigError("rl: checkpoint_steps must be non-negative");
  }
  if (eval_boards <= 0) throw ConfigError("eval: boards must be positive");
}

std::string TomlToJson(std::string_view toml) {
  json root = json::object();
  json* section = &root;
  long line_no = 0;
  std::istringstream in{std::string(toml)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(StripComment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      const std::string name(Trim(line.substr(1, line.size() - 2)));
      if (root.contains(name)) {
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": duplicate section [" + name + "]");
      }
      root[name] = json::object();
      section = &root[name];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (section->contains(key)) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    }
    (*section)[key] = ParseValue(Trim(line.substr(eq + 1)), line_no);
  }
  return root.dump();
}

RunConfig ApplyConfigText(const RunConfig& base, std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) {
    t.remove_prefix(1);
  }
  json j;
  try {
    j = json::parse(!t.empty() && t.front() == '{' ? std::string(t) : TomlToJson(t));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a table/object");

  RunConfig c = base;
  bool seed_given = false;
  if (j.contains("profile")) {
    c = RunConfig::Profile(Get<std::string>(j["profile"], "profile"));
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "profile") {
    } else if (key == "variant") {
      c.variant = GameVariant::Parse(Get<std::string>(v, key));
    } else if (key == "seed") {
      c.seed = Get<std::uint64_t>(v, key);
      seed_given = true;
    } else if (key == "hidden_width") {
      c.hidden_width = Get<int>(v, key);
    } else if (key == "hidden_layers") {
      c.hidden_layers = Get<int>(v, key);
    } else if (key == "workers") {
      c.workers = Get<int>(v, key);
    } else if (key == "reproducible") {
      c.reproducible = Get<bool>(v, key);
    } else if (key == "sl") {
      ApplySection(v, key, [&](const std::string& k, const json& x) {
        const std::string full = "sl." + k;
        if (k == "learning_rate") c.sl.learning_rate = Get<double>(x, full);
        else if (k == "batch_size") c.sl.batch_size = Get<int>(x, full);
        else if (k == "epochs") c.sl.epochs = Get<int>(x, full);
        else if (k == "eval_every") c.sl.eval_every = Get<int>(x, full);
        else if (k == "max_grad_norm") c.sl.max_grad_norm = Get<double>(x, full);
        else Unknown(full);
      });
    } else if (key == "ppo") {
      ApplySection(v, key, [&](const std::string& k, const json& x) {
        const std::string full = "ppo." + k;
        PpoConfig& p = c.ppo;
        if (k == "num_envs") p.num_envs = Get<int>(x, full);
        else if (k == "rollout_length") p.rollout_length = Get<int>(x, full);
        else if (k == "gae_lambda") p.gae_lambda = Get<double>(x, full);
        else if (k == "discount") p.discount = Get<double>(x, full);
        else if (k == "clip_ratio") p.clip_ratio = Get<double>(x, full);
        else if (k == "value_coef") p.value_coef = Get<double>(x, full);
        else if (k == "entropy_coef") p.entropy_coef = Get<double>(x, full);
        else if (k == "minibatch_size") p.minibatch_size = Get<int>(x, full);
        else if (k == "learning_rate") p.learning_rate = Get<double>(x, full);
        else if (k == "update_steps") p.update_steps = Get<int>(x, full);
        else if (k == "epochs_per_update") p.epochs_per_update = Get<int>(x, full);
        else if (k == "max_grad_norm") p.max_grad_norm = Get<double>(x, full);
        else if (k == "normalize_advantages") p.normalize_advantages = Get<bool>(x, full);
        else if (k == "clip_value_loss") p.clip_value_loss = Get<bool>(x, full);
        else Unknown(full);
      });
    } else if (key == "fsp") {
      ApplySection(v, key, [&](const std::string& k, const json& x) {
        if (k == "enabled") c.fsp.enabled = Get<bool>(x, "fsp." + k);
        else if (k == "snapshot_every") c.fsp.snapshot_every = Get<int>(x, "fsp." + k);
        else Unknown("fsp." + k);
      });
    } else if (key == "rl") {
      ApplySection(v, key, [&](const std::string& k, const json& x) {
        if (k != "checkpoint_steps") Unknown("rl." + k);
        if (!x.is_array()) throw ConfigError("rl.checkpoint_steps must be an array");
        c.checkpoint_steps.clear();
        for (const json& s : x) c.checkpoint_steps.push_back(Get<int>(s, "rl." + k));
      });
    } else if (key == "eval") {
      ApplySection(v, key, [&](const std::string& k, const json& x) {
        if (k == "boards") c.eval_boards = Get<int>(x, "eval." + k);
        else Unknown("eval." + k);
      });
    } else {
      Unknown(key);
    }
  }
  if (seed_given) c.SetSeed(c.seed);
  c.Validate();
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path, const RunConfig& base) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  try {
    return ApplyConfigText(base, text);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string ToToml(const RunConfig& c) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  os << "profile = \"" << c.profile << "\"\n"
     << "variant = \"" << c.variant.Name() << "\"\n"
     << "seed = " << c.seed << "\n"
     << "hidden_width = " << c.hidden_width << "\n"
     << "hidden_layers = " << c.hidden_layers << "\n"
     << "workers = " << c.workers << "\n"
     << "reproducible = " << b(c.reproducible) << "\n\n"
     << "[sl]\n"
     << "learning_rate = " << Num(c.sl.learning_rate) << "\n"
     << "batch_size = " << c.sl.batch_size << "\n"
     << "epochs = " << c.sl.epochs << "\n"
     << "eval_every = " << c.sl.eval_every << "\n"
     << "max_grad_norm = " << Num(c.sl.max_grad_norm) << "\n\n"
     << "[ppo]\n"
     << "num_envs = " << c.ppo.num_envs << "\n"
     << "rollout_length = " << c.ppo.rollout_length << "\n"
     << "gae_lambda = " << Num(c.ppo.gae_lambda) << "\n"
     << "discount = " << Num(c.ppo.discount) << "\n"
     << "clip_ratio = " << Num(c.ppo.clip_ratio) << "\n"
     << "value_coef = " << Num(c.ppo.value_coef) << "\n"
     << "entropy_coef = " << Num(c.ppo.entropy_coef) << "\n"
     << "minibatch_size = " << c.ppo.minibatch_size << "\n"
     << "learning_rate = " << Num(c.ppo.learning_rate) << "\n"
     << "update_steps = " << c.ppo.update_steps << "\n"
     << "epochs_per_update = " << c.ppo.epochs_per_update << "\n"
     << "max_grad_norm = " << Num(c.ppo.max_grad_norm) << "\n"
     << "normalize_advantages = " << b(c.ppo.normalize_advantages) << "\n"
     << "clip_value_loss = " << b(c.ppo.clip_value_loss) << "\n\n"
     << "[fsp]\n"
     << "enabled = " << b(c.fsp.enabled) << "\n"
     << "snapshot_every = " << c.fsp.snapshot_every << "\n\n"
     << "[rl]\n"
     << "checkpoint_steps = [";
  for (std::size_t i = 0; i < c.checkpoint_steps.size(); ++i) {
    os << (i ? ", " : "") << c.checkpoint_steps[i];
  }
  os << "]\n\n"
     << "[eval]\n"
     << "boards = " << c.eval_boards << "\n";
  return os.str();
}

}  // namespace brl
