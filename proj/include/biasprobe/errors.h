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

#ifndef BIASPROBE_ERRORS_H_
#define BIASPROBE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace biasprobe {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file does not follow its declared format. `line` is 1-based, 0 when
// the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input parsed but violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Unknown key, e.g. an attribute missing from a dictionary.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An annotator could not produce an annotation for a sentence.
class AnnotationError : public Error {
 public:
  AnnotationError(std::string sentence, const std::string& what)
      : Error(what), sentence_(std::move(sentence)) {}

  const std::string& sentence() const { return sentence_; }

 private:
  std::string sentence_;
};

// The model-under-test could not be queried. `status` is the HTTP status of
// the last attempt, 0 for transport failures.
class QueryError : public Error {
 public:
  QueryError(int status, const std::string& what)
      : Error(what), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

// Inconsistent campaign configuration. The CLI maps it to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Record stream written by an incompatible schema version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace biasprobe

#endif  // BIASPROBE_ERRORS_H_
