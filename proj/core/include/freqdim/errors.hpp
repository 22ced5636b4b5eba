// Copyright 2026 The freqdim Authors
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

#ifndef FREQDIM_ERRORS_HPP_
#define FREQDIM_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freqdim {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// A digit word that is not realized by the expansion system.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// A sign or digit decision could not be certified within the precision cap.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, std::size_t index)
      : Error(what + " (at index " + std::to_string(index) + ")"), index_(index) {}
  explicit PrecisionError(const std::string& what) : Error(what), index_(0) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// The greedy expansion of 1 did not terminate within the digit budget.
class NonTerminatingError : public Error {
 public:
  using Error::Error;
};

// An enumeration or evaluation exceeded its node budget.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t explored, std::size_t partial)
      : Error(what), explored_(explored), partial_(partial) {}

  // Nodes visited before giving up.
  std::size_t explored() const { return explored_; }
  // Results (members, cylinders, ...) produced before giving up.
  std::size_t partial() const { return partial_; }

 private:
  std::size_t explored_;
  std::size_t partial_;
};

}  // namespace freqdim

#endif  // FREQDIM_ERRORS_HPP_
