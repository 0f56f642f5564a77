// Copyright 2026 The servesim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace servesim {

// Invalid numeric parameters handed to a pure operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scenario/sweep validation failure. `field()` is the dotted path of the
// offending field, e.g. "platform.memory_gb".
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Configuration the simulator cannot execute (detected before the run).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data, e.g. negative billed durations.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Aggregate requested over a set with nothing to aggregate.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken simulator invariant (e.g. scheduling into the past). Aborts a run.
class SimLogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace servesim
