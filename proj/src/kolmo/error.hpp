// Copyright 2026 The kolmo Authors
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

#ifndef KOLMO_ERROR_HPP
#define KOLMO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kolmo {

enum class ErrorCode {
  InvalidField,     // non-finite values
  Shape,            // grid / component mismatch
  Symmetry,         // Hermitian symmetry violated
  MeanViolation,    // nonzero mean where a zero-mean field is required
  FloorViolation,   // omega below the numerical floor
  BlowUp,           // non-finite tendency, dt collapse, integral threshold
  Validation,       // bad parameters or configuration
  Io,
  Checksum,
  Misaligned,       // trajectories with different grids or times
  InsufficientData  // too few snapshots
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = 0.0)
      : std::runtime_error(what), code_(code), magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  /// Size of the offending quantity when one exists (asymmetry, mean, ...).
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace kolmo

#endif  // KOLMO_ERROR_HPP
