// Copyright 2026 The Strata Authors
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

namespace strata {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count, or a size is out of range.
struct DimensionError : Error {
    using Error::Error;
};

/// A physical model is malformed (non-commuting generators, bad trace, ...).
struct ModelError : Error {
    using Error::Error;
};

/// The requested backend/frame combination has no evaluation path.
struct UnsupportedError : Error {
    using Error::Error;
};

/// A dense computation would exceed the configured qubit cap.
struct CapExceededError : UnsupportedError {
    using UnsupportedError::UnsupportedError;
};

/// Invalid scalar argument.
struct ArgumentError : Error {
    using Error::Error;
};

/// A root finder was asked for a value outside the function's range.
struct NoRootError : Error {
    using Error::Error;
};

/// Malformed textual input (Pauli strings, model files, CLI identifiers).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace strata
