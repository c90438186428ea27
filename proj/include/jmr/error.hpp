// Copyright 2026 The jmr Authors

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
 * Exception types shared by every module. All of them derive from
 * jmr::Error so callers (the CLI in particular) can map them to an
 * input-error exit code in one place.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace jmr {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-conformable operands, or operators living on different spaces.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An argument outside the domain of the operation (eta > 1, n = 0, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Malformed or semantically invalid input document.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Work guard tripped (e.g. --max-set-size).
class LimitError : public Error {
  public:
    using Error::Error;
};

} // namespace jmr
