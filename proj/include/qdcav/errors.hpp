// Copyright 2026 The qdcavity Authors
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

namespace qdcav {

/// Operator or layout dimensions do not fit together.
class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (non-Hermitian
/// input to an eigen-solver, division by a zero rate, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested reduction needs a different Hilbert-space layout
/// (e.g. photon-pair concurrence with more than two photon levels).
class UnsupportedLayout : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The estimated working set of a run exceeds the configured memory cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared in the propagated density matrix.
class NumericBlowup : public std::runtime_error {
 public:
  NumericBlowup(long step, double t_fs, double dt_fs)
      : std::runtime_error("non-finite density matrix after step " + std::to_string(step) +
                           " (t = " + std::to_string(t_fs) + " fs); retry with dt_fs <= " +
                           std::to_string(dt_fs / 2.0)),
        step_(step),
        t_fs_(t_fs),
        suggested_dt_fs_(dt_fs / 2.0) {}

  long step() const noexcept { return step_; }
  double time_fs() const noexcept { return t_fs_; }
  double suggested_dt_fs() const noexcept { return suggested_dt_fs_; }

 private:
  long step_;
  double t_fs_;
  double suggested_dt_fs_;
};

/// Configuration could not be parsed or validated. `key()` holds the dotted
/// key path of the offending entry when one is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace qdcav
