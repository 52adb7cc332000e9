// Copyright 2026 The mqka Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace mqka {

using ParticipantId = int;

// Malformed inputs: length mismatches, out-of-range positions, empty lists.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An actor attempted an operation its protocol role does not permit.
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a decoy check fails; carries where it happened.
class DetectionAbort : public std::runtime_error {
 public:
  DetectionAbort(int period, ParticipantId from, ParticipantId to, std::size_t failed)
      : std::runtime_error("decoy check failed in period " + std::to_string(period) + " on edge " +
                           std::to_string(from) + "->" + std::to_string(to) + " (" +
                           std::to_string(failed) + " failed)"),
        period_(period),
        from_(from),
        to_(to),
        failed_(failed) {}

  int period() const { return period_; }
  ParticipantId from() const { return from_; }
  ParticipantId to() const { return to_; }
  std::size_t failed() const { return failed_; }

 private:
  int period_;
  ParticipantId from_;
  ParticipantId to_;
  std::size_t failed_;
};

}  // namespace mqka
