// Copyright 2026 The ququart Authors
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

namespace ququart {

/// Base class of every exception thrown by the library. The C API maps each
/// subclass onto one `qq_status` code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Level or register dimensions out of range or mismatched.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input failed a numerical validity check (non-unitary matrix, invalid
/// density matrix, parameter outside its physical range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed call: duplicate targets, empty selections, unsupported option.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (integrator, eigen-solver, fit prerequisites).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A compiled circuit did not reproduce its target within tolerance.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace ququart
