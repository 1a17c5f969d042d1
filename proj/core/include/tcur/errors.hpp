// Copyright 2026 The tcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TCUR_ERRORS_HPP
#define TCUR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tcur {

// Dimension or conformability violations (mismatched t-product operands,
// fold of a matrix whose row count is not divisible by n3, ...).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Failures of the numerical kernels themselves (an SVD that did not
// converge on some Fourier face, a root finder that lost its bracket).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// File and configuration problems, with a machine-checkable kind.
class IoError : public std::runtime_error {
 public:
  enum class Kind {
    OpenFailed,
    WriteFailed,
    BadMagic,
    BadVersion,
    BadDims,
    Truncated,
    TrailingData,
    NonFinite,
    BadConfig,
  };

  IoError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace tcur

#endif  // TCUR_ERRORS_HPP
