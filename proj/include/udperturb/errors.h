// Copyright 2026 The udperturb Authors.
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

#ifndef UDPERTURB_ERRORS_H_
#define UDPERTURB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace udperturb {

// Base class for every error that originates from bad input data or a
// violated contract. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CoNLL-U (or other line-oriented input). Carries the 1-based line.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : DataError("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Keyboard layout file problems (duplicate keys, empty rows, bad offsets).
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Two treebanks that should be token-aligned are not.
class AlignmentError : public DataError {
 public:
  AlignmentError(std::size_t sentence_index, const std::string& message)
      : DataError("sentence " + std::to_string(sentence_index) + ": " +
                  message),
        sentence_index_(sentence_index) {}

  std::size_t sentence_index() const { return sentence_index_; }

 private:
  std::size_t sentence_index_;
};

// A precondition of an operation does not hold for the given input.
class ContractError : public DataError {
 public:
  using DataError::DataError;
};

// A tree cannot be expressed in the bracketing encoding.
class EncodingFailure : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace udperturb

#endif  // UDPERTURB_ERRORS_H_
