// Copyright 2026 The qstack Authors
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

namespace qstack {

/// Raised when caller-supplied parameters violate a documented constraint.
/// The message names the constraint.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

inline void require(bool condition, const char* constraint) {
  if (!condition) throw ValidationError(constraint);
}

inline void require(bool condition, const std::string& constraint) {
  if (!condition) throw ValidationError(constraint);
}

}  // namespace qstack
