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

#include "exedec/common.hpp"

namespace exedec {

std::string_view domain_id(Domain d) { return d == Domain::RobustFill ? "rf" : "dc"; }

Domain parse_domain(std::string_view id) {
  if (id == "rf" || id == "robustfill") return Domain::RobustFill;
  if (id == "dc" || id == "deepcoder") return Domain::DeepCoder;
  throw std::invalid_argument("unknown domain '" + std::string(id) + "'");
}

}  // namespace exedec
