// Copyright 2026 The qmeasure Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qmeasure {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Operator expected to be Hermitian is not.
class NotHermitianError : public Error {
  public:
    using Error::Error;
};

/// Scalar parameter outside its admissible range.
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// A value failed one of its type invariants (normalization, resolution of
/// unity, positivity, unitarity, ...).
class InvariantError : public Error {
  public:
    using Error::Error;
};

/// Joint distribution requested for meters that do not commute.
class NonCommutingMetersError : public Error {
  public:
    using Error::Error;
};

/// Hypothesis of a theorem-level check does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Compact rendering of a real number for diagnostics ("%.6g").
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace qmeasure
