// Copyright 2026 The nilsolv Authors
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

#ifndef NILSOLV_ERRORS_H_
#define NILSOLV_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilsolv {

// Invalid arguments: bad indices, singular matrices, malformed input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size ceiling would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required_dimension)
      : std::runtime_error(what), required_dimension_(required_dimension) {}
  std::uint64_t required_dimension() const { return required_dimension_; }

 private:
  std::uint64_t required_dimension_;
};

// The requested (m, p) has no admissible-metric layout.
class UnsupportedCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called on input that violates its stated precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A caller-supplied stop check asked a long computation to abandon its work.
class CancelledError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The solver could not certify either outcome.
class UndecidedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilsolv

#endif  // NILSOLV_ERRORS_H_
