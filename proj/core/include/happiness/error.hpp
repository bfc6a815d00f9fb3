/*
 * Copyright (C) 2026 The Happiness Classifier Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HAPPINESS_ERROR_HPP_
#define HAPPINESS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace happiness {

// Base for every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input supplied by the caller: malformed files, schema violations,
// arguments outside an operation's domain. The CLI maps these to exit 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A line-oriented input (JSONL records, lexicon files) failed to parse.
// The message is already prefixed with "line N: ".
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A value violates an invariant of the data model.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace happiness

#endif  // HAPPINESS_ERROR_HPP_
