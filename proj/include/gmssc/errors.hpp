// Copyright 2026 The gmssc Authors
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

namespace gmssc {

/// Invalid caller-supplied data: malformed documents, out-of-range demands,
/// dimension mismatches. Maps to CLI exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation whose enumeration/DP size exceeds its desk-scale cap.
/// Maps to CLI exit code 2.
class DeskScaleError : public std::runtime_error {
 public:
  explicit DeskScaleError(const std::string& what) : std::runtime_error(what) {}
};

/// File system failures, reported with the offending path. CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gmssc
