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

#ifndef BRL_IO_H_
#define BRL_IO_H_

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace brl {

// Runs `write` against a temporary sibling of `path` and renames it into
// place on success. On any exception the temporary file is removed and the
// exception propagates, so `path` is either untouched or complete.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& write,
                         bool binary = false);

// Reads all lines (without terminators). Throws DataError if unreadable.
std::vector<std::string> ReadLines(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);

// Minimal CSV quoting for fields that contain separators.
std::string CsvField(std::string_view text);

}  // namespace brl

#endif  // BRL_IO_H_
