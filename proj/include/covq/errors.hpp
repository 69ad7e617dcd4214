// Copyright 2026 The covq Authors.
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

namespace covq {

/// A parameter lies outside the physical or mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The transmission probability required by a policy exceeds 1, i.e. the
/// square-root-law regime does not hold for the requested (n, delta, box).
class QOutOfRange : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// The box corner needed for a covertness computation sits at eta = 1.
class DegenerateBox : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace covq
