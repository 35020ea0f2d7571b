// Copyright 2026 The ExeDec Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exedec {

enum class Domain { RobustFill, DeepCoder };

// Short identifiers used in dataset records and on the wire.
std::string_view domain_id(Domain d);
Domain parse_domain(std::string_view id);

// Raised by the surface-syntax parsers. `position` is a byte offset into the
// parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Bounded generation gave up (rejection cap, empty solution index, ...).
class GenerationTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration exceeded its configured candidate cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ground-truth solution failed to execute while being decomposed.
class InconsistentSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Results and dataset files could not be aligned by task seed.
class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exedec
