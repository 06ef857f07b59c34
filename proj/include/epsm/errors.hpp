// Copyright 2026 The EPSM Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace epsm {

// Malformed document. `locus` is "line N" or a JSON pointer to the field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string locus, std::string message)
      : std::runtime_error(locus.empty() ? message : locus + ": " + message),
        locus_(std::move(locus)),
        message_(std::move(message)) {}
  const std::string& locus() const { return locus_; }
  const std::string& message() const { return message_; }

 private:
  std::string locus_;
  std::string message_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a mapping.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OffMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SchemaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epsm

namespace epsm {

class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace epsm

namespace epsm {

class EmptyDetectionError : public EmptyInputError {
 public:
  using EmptyInputError::EmptyInputError;
};

}  // namespace epsm
