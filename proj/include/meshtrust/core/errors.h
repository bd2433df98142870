// Copyright 2026 The meshtrust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MESHTRUST_CORE_ERRORS_H_
#define MESHTRUST_CORE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace meshtrust {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario config rejected; carries one diagnostic per violated constraint,
// each prefixed with the field path.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid config";
    for (const auto& item : items) {
      out += "\n  " + item;
    }
    return out;
  }

  std::vector<std::string> diagnostics_;
};

class DuplicateDeviceIdError : public Error {
 public:
  using Error::Error;
};

class UnknownZoneError : public Error {
 public:
  using Error::Error;
};

class UnknownDeviceError : public Error {
 public:
  using Error::Error;
};

class KeyMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyPlaintextError : public Error {
 public:
  using Error::Error;
};

// Sender-side gate refused: current trust toward the receiver is below
// the envelope's transmission threshold.
class BelowTransmissionThresholdError : public Error {
 public:
  BelowTransmissionThresholdError(double score, double required)
      : Error("transmission refused: score " + std::to_string(score) +
              " below threshold " + std::to_string(required)),
        score_(score),
        required_(required) {}

  double score() const { return score_; }
  double required() const { return required_; }

 private:
  double score_;
  double required_;
};

}  // namespace meshtrust

#endif  // MESHTRUST_CORE_ERRORS_H_
