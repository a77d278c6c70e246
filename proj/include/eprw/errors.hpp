// Copyright 2026 The eprw Authors
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

namespace eprw {

/// Input outside the mathematical domain of an operation (negative photon
/// number, NaN, out-of-range visibility, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Second moments that violate the uncertainty principle.
class UnphysicalStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quantity is 0/0 at the requested point, e.g. the HBT witness of vacuum.
class DegenerateInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A Fock-space operation lost more norm to the basis cutoff than allowed.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eprw
