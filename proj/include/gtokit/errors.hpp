// Copyright 2026 The gtokit Authors
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

namespace gtokit {

/// Malformed input: wrong shape, non-unitary / non-symplectic where one is
/// required, invalid covariance matrix, and so on.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string &what)
      : std::invalid_argument(what) {}
};

/// Well-formed input outside the mathematical domain of an operation
/// (non-positive temperature, symplectic eigenvalue below one, p > 1 ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// A truncated distribution would drop more probability mass than allowed.
class CutoffError : public std::runtime_error {
 public:
  explicit CutoffError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace gtokit
