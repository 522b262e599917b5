// Copyright 2026 The stirpour Authors. All Rights Reserved.
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
// =============================================================================

#ifndef STIRPOUR_ERRORS_HPP
#define STIRPOUR_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stirpour {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad geometry, non-positive step sizes, even star order...
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument's value was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-finite particle state after a solver step.
class NumericalDivergence : public Error {
 public:
  NumericalDivergence(std::int64_t step_index, const std::string& what)
      : Error("numerical divergence at step " + std::to_string(step_index) + ": " + what),
        step_index_(step_index) {}

  std::int64_t step_index() const noexcept { return step_index_; }

 private:
  std::int64_t step_index_;
};

/// The stirring stick reached |inclination| >= pi/2.
class CapsizeError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Kernel matrix factorization failed; usually the noise floor is too small.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// Every calibration rollout capsized, so the surrogate carries no information.
class CalibrationFailure : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one stage of a twin experiment.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace stirpour

#endif  // STIRPOUR_ERRORS_HPP
