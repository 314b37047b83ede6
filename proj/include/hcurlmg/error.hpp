// Copyright 2026 The hcurlmg Authors.
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

namespace hcurlmg {

enum class ErrorKind {
  Precondition,     // caller violated an operation contract
  InvalidMesh,      // degenerate or malformed mesh data
  InvalidElement,   // degenerate tetrahedron
  ClosureDepth,     // refinement closure did not terminate within the cap
  Evaluation,       // non-finite field sample or quadrature value
  Hierarchy,        // corrupted refinement forest / transfer setup
  Setup,            // singular coarse factorization and similar
  Configuration,    // bad user-facing options
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace hcurlmg
