// Copyright 2026 The qnokey Authors
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

#ifndef QNOKEY_ERROR_HPP
#define QNOKEY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qnokey {

/// Bad input: shape mismatches, unknown registers, malformed text.
/// Maps to exit code 1 at the CLI boundary.
class UsageError : public std::invalid_argument {
  public:
    explicit UsageError(const std::string &what) : std::invalid_argument(what) {}
};

/// A physical precondition on a state was not met, e.g. detaching a register
/// that is still entangled with the rest of the system.
class StateError : public UsageError {
  public:
    explicit StateError(const std::string &what) : UsageError(what) {}
};

/// A protocol verification failed (tampering detected).
class CheckFailure : public std::runtime_error {
  public:
    explicit CheckFailure(const std::string &what) : std::runtime_error(what) {}
};

/// An internal invariant did not hold. Always a bug or an illegal channel.
class InvariantViolation : public std::logic_error {
  public:
    explicit InvariantViolation(const std::string &what) : std::logic_error(what) {}
};

}  // namespace qnokey

#endif  // QNOKEY_ERROR_HPP
