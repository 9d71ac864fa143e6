// Copyright 2026 The biasprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BIASPROBE_IO_H_
#define BIASPROBE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace biasprobe {

// Whole file as bytes. Throws ConfigError when the file cannot be read.
std::string ReadFile(const std::filesystem::path& path);

// Replaces `path` with `content` (write to a sibling temp file, then rename).
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view bytes);

}  // namespace biasprobe

#endif  // BIASPROBE_IO_H_
