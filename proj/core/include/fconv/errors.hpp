// Copyright 2026 The fconv Authors
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

namespace fconv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a physics configuration violates its invariants.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical failure. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The linear-response denominator D vanished relative to the T-factor scale.
class SingularDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Maxwell-Bloch variable became NaN or infinite. Usually dt is too large.
class NonFiniteState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A population left [-tol, 1 + tol] or picked up an imaginary part.
class PopulationViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Pulse efficiency requested with no input idler energy.
class ZeroInput : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// No spectral line stands out of the noise floor in a modulation trace.
class NoModulation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fconv
