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

/**
 * @file
 * JSON encoding of the library's value types.
 *
 * Matrix:  {"rows": r, "cols": c, "data": [[re, im], ...]}  (row-major)
 * Vector:  [[re, im], ...]
 * PVM/POVM: {"outcomes": [x, ...], "operators": [Matrix, ...]}
 * Process: {"system_dim", "apparatus_dim", "xi": Vector, "unitary": Matrix,
 *           "meter": PVM}
 *
 * Complex numbers are always [re, im] pairs of JSON numbers.
 */

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qmeasure/errors.hpp"
#include "qmeasure/intersubjectivity.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/observables.hpp"

namespace qmeasure::io {

using json = nlohmann::json;

/// Malformed or schema-violating JSON input.
class SchemaError : public Error {
  public:
    using Error::Error;
};

json to_json(const ComplexMatrix &m);
json to_json(const Vector &v);
json to_json(const Pvm &pvm);
json to_json(const Povm &povm);
json to_json(const MeasurementProcess &p);
/// [{"outcome": x, "probability": p}, ...]
json to_json(const OutcomeDistribution &d);
/// {"outcomes1": [...], "outcomes2": [...], "table": [[...], ...]}
json to_json(const JointDistribution &d);

ComplexMatrix matrix_from_json(const json &j);
Vector vector_from_json(const json &j);
/// Accepts vectors whose norm is within @p tol of one and rescales them.
StateVector state_from_json(const json &j, double tol = 1e-8);
Pvm pvm_from_json(const json &j);
Povm povm_from_json(const json &j);
MeasurementProcess process_from_json(const json &j);

/// Typed field access with SchemaError on absence or type mismatch.
const json &require(const json &j, const std::string &key);
double require_number(const json &j, const std::string &key);
std::size_t require_count(const json &j, const std::string &key);

} // namespace qmeasure::io
