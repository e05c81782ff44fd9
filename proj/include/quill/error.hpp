/* Copyright 2026 The Quill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef QUILL_ERROR_HPP
#define QUILL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quill {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Bad definitions, unbound names, arity mismatches.
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

// A scheme was instantiated with parameters violating one of its side
// conditions. The message names the violated condition.
class SchemeError : public Error {
 public:
  using Error::Error;
};

// A tactic could not produce its output proof.
class TacticError : public Error {
 public:
  using Error::Error;
};

}  // namespace quill

#endif  // QUILL_ERROR_HPP
