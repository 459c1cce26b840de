// Copyright 2026 The vqint Authors
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

namespace vqint {

/// Base of every error the library throws. Callers that only care about
/// "something went wrong in vqint" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, non-finite angles, bad targets.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Bad configuration values (L = 0, N = 0, probability outside [0, 1], ...).
/// `field()` names the offending configuration key when one is known.
class InvalidConfig : public Error {
 public:
  explicit InvalidConfig(const std::string& message, std::string field = {})
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Input coordinate outside the admissible domain of a model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Kraus set that fails the completeness relation.
class ChannelDefinitionError : public Error {
 public:
  using Error::Error;
};

/// Operation requested in the wrong state representation.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Results that violate a numerical consistency check (imaginary expectation,
/// non-finite gradients, divergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Parameter-shift request on a parameter the shift rule cannot handle.
class UnsupportedParameter : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Metric undefined for the given data (zero variance, zero normalizer).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

/// Integration endpoint outside the training domain.
class ExtrapolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vqint
