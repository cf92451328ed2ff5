// Copyright 2026 The qjdr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception hierarchy shared by every qjdr module.
 *
 * Numerical failures derive from NumericalError, malformed inputs from
 * InputError and file-system failures from IoError so that front ends can
 * map whole families onto exit codes.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qjdr {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad shapes, out-of-range arguments, parse failures.
class InputError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public InputError {
  public:
    using InputError::InputError;
};

class NotHermitian : public InputError {
  public:
    using InputError::InputError;
};

class InvalidState : public InputError {
  public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
  public:
    using InputError::InputError;
};

class ElementCountMismatch : public InputError {
  public:
    using InputError::InputError;
};

class ParamLengthMismatch : public InputError {
  public:
    using InputError::InputError;
};

class DegenerateEnsemble : public InputError {
  public:
    using InputError::InputError;
};

class ParseError : public InputError {
  public:
    using InputError::InputError;
};

class ConfigError : public InputError {
  public:
    using InputError::InputError;
};

class NoConvergence : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Thermal tail beyond the Fock cutoff carries too much weight.
class CutoffTooSmall : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Displacement too large for the truncated Fock space.
class TruncationRisk : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

} // namespace qjdr
