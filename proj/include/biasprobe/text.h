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

// Byte-level text helpers shared by the mutation engine and the lexicon
// annotator. Both agree on what a "word" is: a maximal run of word bytes.

#ifndef BIASPROBE_TEXT_H_
#define BIASPROBE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

// ASCII letters and digits, plus every non-ASCII byte so that UTF-8 encoded
// letters are never treated as boundaries.
constexpr bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

constexpr bool IsSpaceByte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

struct Token {
  std::string_view text;
  std::size_t begin = 0;  // byte offset into the tokenized string
  bool is_word = false;
};

// Words are maximal runs of word bytes; every other non-space byte is a
// one-byte punctuation token. Whitespace is dropped.
std::vector<Token> Tokenize(std::string_view text);

// Whitespace-delimited pieces, in order.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

std::string_view Trim(std::string_view text);
std::string AsciiLower(std::string_view text);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);

}  // namespace biasprobe

#endif  // BIASPROBE_TEXT_H_
