// Copyright 2026 The inkrec Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inkrec {

// Base for every error the library raises on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: JSON syntax or schema. Line and column are 1-based; zero
// when the location is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that breaks a type invariant.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t sample_index,
                  std::string field)
      : Error(what), sample_index_(sample_index), field_(std::move(field)) {}

  std::size_t sample_index() const noexcept { return sample_index_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t sample_index_;
  std::string field_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model file or tensor dimensions that do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class TrainError : public Error {
 public:
  TrainError(const std::string& what, std::size_t epoch)
      : Error(what), epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace inkrec
