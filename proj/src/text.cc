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

#include "biasprobe/text.h"

namespace biasprobe {

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (IsSpaceByte(c)) {
      ++i;
      continue;
    }
    if (!IsWordByte(c)) {
      tokens.push_back({text.substr(i, 1), i, false});
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < text.size() &&
           IsWordByte(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    tokens.push_back({text.substr(i, end - i), i, true});
    i = end;
  }
  return tokens;
}

std::vector<std::string_view> SplitWhitespace(std::string_view text) {
  std::vector<std::string_view> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpaceByte(static_cast<unsigned char>(text[i])))
      ++i;
    if (i == text.size()) break;
    std::size_t end = i;
    while (end < text.size() &&
           !IsSpaceByte(static_cast<unsigned char>(text[end])))
      ++end;
    pieces.push_back(text.substr(i, end - i));
    i = end;
  }
  return pieces;
}

std::string_view Trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && IsSpaceByte(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && IsSpaceByte(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  return AsciiLower(a) == AsciiLower(b);
}

}  // namespace biasprobe
