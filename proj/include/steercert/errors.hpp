// Copyright 2026 The steercert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace steercert {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data (tables, assemblages, files) violating a structural invariant.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Data that is well-formed but cannot arise from the quantum model the
// operation assumes.
class Inconsistent : public Error {
 public:
  using Error::Error;
};

}  // namespace steercert
