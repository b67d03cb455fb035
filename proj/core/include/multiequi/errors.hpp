// Copyright 2026 The multiequi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace multiequi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Cayley table or permutation list violates a group axiom.
class InvalidGroup : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Two actions that must share one group were built over different groups.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

// Equivariant product-group symmetrization needs the factor actions to
// commute; raised when they do not.
class NonCommutativeActions : public Error {
 public:
  using Error::Error;
};

// A dimension formula produced a non-integer value, which can only happen
// when the supplied action is broken.
class NonIntegralDimension : public Error {
 public:
  using Error::Error;
};

}  // namespace multiequi
