// Copyright 2026 The catpump Authors
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

namespace catpump {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mode truncation smaller than two levels, or an empty dims list.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

// Operands whose dims do not line up.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// Mode index outside the dims list.
class ModeIndexError : public Error {
 public:
  using Error::Error;
};

// A physical parameter outside its domain (negative rate, zero cycles, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// The Fock truncation cannot represent the requested amplitude.
class TruncationInadequate : public Error {
 public:
  TruncationInadequate(const std::string& what, int required_dim)
      : Error(what + " (required dim >= " + std::to_string(required_dim) + ")"),
        required_dim_(required_dim) {}

  int required_dim() const noexcept { return required_dim_; }

 private:
  int required_dim_;
};

// Time stepping failed: step outside the stability region or a non-finite state.
class IntegratorError : public Error {
 public:
  IntegratorError(const std::string& what, double dt, double suggested_dt)
      : Error(what), dt_(dt), suggested_dt_(suggested_dt) {}

  double dt() const noexcept { return dt_; }
  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double dt_;
  double suggested_dt_;
};

// The pump mode still holds photons after the reset phase of a switched cycle.
class IncompleteReset : public Error {
 public:
  IncompleteReset(double residue, double threshold)
      : Error("pump reset incomplete: residual population " + std::to_string(residue) +
              " >= threshold " + std::to_string(threshold)),
        residue_(residue),
        threshold_(threshold) {}

  double residue() const noexcept { return residue_; }
  double threshold() const noexcept { return threshold_; }

 private:
  double residue_;
  double threshold_;
};

}  // namespace catpump
