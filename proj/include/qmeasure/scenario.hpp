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
 * Scenario files: a system state, an observable, one or two measuring
 * processes and the experiment to run on them. parse_scenario() and
 * resolve() form the single validation path shared by `validate`, `run`
 * and `sweep`.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmeasure/intersubjectivity.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/observables.hpp"

namespace qmeasure::scenario {

using json = nlohmann::json;

inline constexpr const char *kSchemaVersion = "1.0";
/// Amplitude arrays further than this from unit norm are rejected.
inline constexpr double kInputNormTol = 1e-8;

struct HermitianObservable {
    ComplexMatrix matrix;
};
struct UnsharpObservable {
    double eta;
};
using ObservableSpec = std::variant<HermitianObservable, Pvm, Povm, UnsharpObservable>;

struct VonNeumannModel {
    std::optional<ObservableSpec> observable; ///< defaults to the scenario's
};
struct DilationModel {
    std::optional<ObservableSpec> observable;
    Completion completion = Completion::kStandardBasis;
    std::uint64_t seed = 0;
};
using ProcessSpec = std::variant<VonNeumannModel, DilationModel, MeasurementProcess>;

enum class Experiment { kInduce, kReproduce, kJoint, kOit, kSample };

struct Tolerances {
    double cluster = kClusterTol;
    double reproducibility = kReproducibilityTol;
    double commutation = kCommutationTol;
};

struct Params {
    Tolerances tolerances;
    std::size_t n_samples = 100000;
    std::uint64_t seed = 0;
};

struct Scenario {
    std::string schema_version = kSchemaVersion;
    StateVector state;
    ObservableSpec observable;
    /// Accurate observable used by `reproduce` and `oit`.
    std::optional<ObservableSpec> reference;
    std::vector<ProcessSpec> processes;
    Experiment experiment = Experiment::kInduce;
    Params params;
};

/// Scenario with every model instantiated.
struct ResolvedScenario {
    Povm observable;
    std::optional<Pvm> reference;
    std::vector<MeasurementProcess> processes;
};

/// Parse and type-check. Throws io::SchemaError or a library invariant error.
Scenario parse_scenario(const json &j);
json to_json(const Scenario &s);

/**
 * Instantiate observables and processes and check that the experiment's
 * requirements hold (process count, reference observable, dimensions).
 * Throws io::SchemaError or a library invariant error.
 */
ResolvedScenario resolve(const Scenario &s);

/// Execute the experiment and build the report. Propagates
/// NonCommutingMetersError and PreconditionError.
json run_experiment(const Scenario &s);

/// Agreement probability of the two-process scenario with the unsharp
/// observable set to @p eta.
double agreement_at_eta(const Scenario &s, double eta);

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string &name);

} // namespace qmeasure::scenario
