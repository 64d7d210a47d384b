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

#include "qmeasure/scenario.hpp"

#include <array>
#include <string>
#include <type_traits>
#include <utility>

#include "qmeasure/errors.hpp"
#include "qmeasure/serialization.hpp"

namespace qmeasure::scenario {

namespace {

using io::SchemaError;

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::pair<Experiment, const char *>, 5> kExperimentNames{{
    {Experiment::kInduce, "induce"},
    {Experiment::kReproduce, "reproduce"},
    {Experiment::kJoint, "joint"},
    {Experiment::kOit, "oit"},
    {Experiment::kSample, "sample"},
}};

bool needs_two_processes(Experiment e) {
    return e == Experiment::kJoint || e == Experiment::kOit ||
           e == Experiment::kSample;
}

ObservableSpec observable_from_json(const json &j) {
    if (!j.is_object() || j.size() != 1) {
        throw SchemaError("observable must be an object with exactly one of "
                          "\"hermitian_matrix\", \"pvm\", \"povm\", \"unsharp\"");
    }
    const auto &[kind, body] = *j.items().begin();
    if (kind == "hermitian_matrix") {
        ComplexMatrix m = io::matrix_from_json(body);
        if (!m.is_square()) {
            throw DimensionError("hermitian_matrix must be square");
        }
        if (!is_hermitian(m)) {
            throw NotHermitianError("hermitian_matrix is not Hermitian");
        }
        return HermitianObservable{std::move(m)};
    }
    if (kind == "pvm") {
        return io::pvm_from_json(body);
    }
    if (kind == "povm") {
        return io::povm_from_json(body);
    }
    if (kind == "unsharp") {
        const double eta = io::require_number(body, "eta");
        unsharp_qubit_povm(eta); // range check
        return UnsharpObservable{eta};
    }
    throw SchemaError("unknown observable kind \"" + kind + "\"");
}

json observable_to_json(const ObservableSpec &spec) {
    return std::visit(
        overloaded{
            [](const HermitianObservable &h) -> json {
                return {{"hermitian_matrix", io::to_json(h.matrix)}};
            },
            [](const Pvm &p) -> json { return {{"pvm", io::to_json(p)}}; },
            [](const Povm &p) -> json { return {{"povm", io::to_json(p)}}; },
            [](const UnsharpObservable &u) -> json {
                return {{"unsharp", {{"eta", u.eta}}}};
            },
        },
        spec);
}

Povm observable_as_povm(const ObservableSpec &spec, double cluster_tol) {
    return std::visit(
        overloaded{
            [&](const HermitianObservable &h) {
                return as_povm(pvm_from_observable(h.matrix, cluster_tol));
            },
            [](const Pvm &p) { return as_povm(p); },
            [](const Povm &p) { return p; },
            [](const UnsharpObservable &u) { return unsharp_qubit_povm(u.eta); },
        },
        spec);
}

// Accurate observable a spec stands for, if it has one. Unsharp observables
// stand for their sharp limit sigma_z.
std::optional<Pvm> accurate_counterpart(const ObservableSpec &spec,
                                        double cluster_tol) {
    return std::visit(
        overloaded{
            [&](const HermitianObservable &h) -> std::optional<Pvm> {
                return pvm_from_observable(h.matrix, cluster_tol);
            },
            [](const Pvm &p) -> std::optional<Pvm> { return p; },
            [](const Povm &p) -> std::optional<Pvm> {
                if (is_projective(p)) {
                    return as_pvm(p);
                }
                return std::nullopt;
            },
            [](const UnsharpObservable &) -> std::optional<Pvm> {
                return as_pvm(unsharp_qubit_povm(1.0));
            },
        },
        spec);
}

Completion completion_from_string(const std::string &s) {
    if (s == "standard") {
        return Completion::kStandardBasis;
    }
    if (s == "random") {
        return Completion::kRandom;
    }
    throw SchemaError("completion must be \"standard\" or \"random\", got \"" + s +
                      "\"");
}

std::uint64_t seed_from_json(const json &j) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw SchemaError("seed must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

ProcessSpec process_from_json(const json &j, std::size_t system_dim) {
    const json &model = io::require(j, "model");
    if (!model.is_string()) {
        throw SchemaError("process \"model\" must be a string");
    }
    const auto name = model.get<std::string>();
    auto optional_observable = [&]() -> std::optional<ObservableSpec> {
        if (j.contains("observable")) {
            return observable_from_json(j.at("observable"));
        }
        return std::nullopt;
    };
    if (name == "von_neumann") {
        return VonNeumannModel{optional_observable()};
    }
    if (name == "dilation") {
        DilationModel d{optional_observable()};
        if (j.contains("completion")) {
            const json &c = j.at("completion");
            if (!c.is_string()) {
                throw SchemaError("completion must be a string");
            }
            d.completion = completion_from_string(c.get<std::string>());
        }
        if (j.contains("seed")) {
            d.seed = seed_from_json(j.at("seed"));
        }
        return d;
    }
    if (name == "custom") {
        json body = j;
        if (!body.contains("system_dim")) {
            body["system_dim"] = system_dim;
        }
        return io::process_from_json(body);
    }
    throw SchemaError("unknown process model \"" + name + "\"");
}

json process_to_json(const ProcessSpec &spec) {
    return std::visit(
        overloaded{
            [](const VonNeumannModel &m) {
                json j{{"model", "von_neumann"}};
                if (m.observable) {
                    j["observable"] = observable_to_json(*m.observable);
                }
                return j;
            },
            [](const DilationModel &m) {
                json j{{"model", "dilation"},
                       {"completion", m.completion == Completion::kStandardBasis
                                          ? "standard"
                                          : "random"},
                       {"seed", m.seed}};
                if (m.observable) {
                    j["observable"] = observable_to_json(*m.observable);
                }
                return j;
            },
            [](const MeasurementProcess &p) {
                json j = io::to_json(p);
                j["model"] = "custom";
                return j;
            },
        },
        spec);
}

Params params_from_json(const json &j) {
    Params p;
    if (!j.is_object()) {
        throw SchemaError("\"params\" must be an object");
    }
    if (j.contains("tolerances")) {
        const json &t = j.at("tolerances");
        if (!t.is_object()) {
            throw SchemaError("\"tolerances\" must be an object");
        }
        for (const auto &[key, field] : {std::pair{"cluster", &p.tolerances.cluster},
                                         std::pair{"reproducibility",
                                                   &p.tolerances.reproducibility},
                                         std::pair{"commutation",
                                                   &p.tolerances.commutation}}) {
            if (t.contains(key)) {
                *field = io::require_number(t, key);
                if (!(*field >= 0.0)) {
                    throw ParameterError(std::string("tolerance \"") + key +
                                         "\" must be non-negative");
                }
            }
        }
    }
    if (j.contains("n_samples")) {
        p.n_samples = io::require_count(j, "n_samples");
    }
    if (j.contains("seed")) {
        p.seed = seed_from_json(j.at("seed"));
    }
    return p;
}

json params_to_json(const Params &p) {
    return {{"tolerances",
             {{"cluster", p.tolerances.cluster},
              {"reproducibility", p.tolerances.reproducibility},
              {"commutation", p.tolerances.commutation}}},
            {"n_samples", p.n_samples},
            {"seed", p.seed}};
}

MeasurementProcess instantiate(const ProcessSpec &spec, const Scenario &s) {
    const double cluster = s.params.tolerances.cluster;
    return std::visit(
        overloaded{
            [&](const VonNeumannModel &m) {
                const Povm obs =
                    observable_as_povm(m.observable.value_or(s.observable), cluster);
                if (!is_projective(obs)) {
                    throw SchemaError("von_neumann model needs an accurate "
                                      "(projective) observable");
                }
                return von_neumann_model(as_pvm(obs));
            },
            [&](const DilationModel &m) {
                const Povm obs =
                    observable_as_povm(m.observable.value_or(s.observable), cluster);
                return dilation_model(obs, {m.completion, m.seed});
            },
            [](const MeasurementProcess &p) { return p; },
        },
        spec);
}

json per_outcome(const std::vector<std::pair<double, double>> &items,
                 const char *value_key) {
    json out = json::array();
    for (const auto &[x, v] : items) {
        out.push_back({{"outcome", x}, {value_key, v}});
    }
    return out;
}

JointScenario compose_resolved(const Scenario &s, const ResolvedScenario &r) {
    return compose(s.state, r.processes[0], r.processes[1],
                   {s.params.tolerances.commutation, kMaxCompoundDim});
}

json joint_block(const JointScenario &joint, const JointDistribution &table) {
    return {{"joint_distribution", io::to_json(table)},
            {"agreement_probability", table.agreement()},
            {"marginal1", io::to_json(table.marginal1())},
            {"marginal2", io::to_json(table.marginal2())},
            {"local", joint.is_local()}};
}

} // namespace

std::string to_string(Experiment e) {
    for (const auto &[value, name] : kExperimentNames) {
        if (value == e) {
            return name;
        }
    }
    return "unknown";
}

Experiment experiment_from_string(const std::string &name) {
    for (const auto &[value, n] : kExperimentNames) {
        if (name == n) {
            return value;
        }
    }
    throw SchemaError("unknown experiment \"" + name + "\"");
}

Scenario parse_scenario(const json &j) {
    if (!j.is_object()) {
        throw SchemaError("scenario must be a JSON object");
    }
    const json &version = io::require(j, "schema_version");
    if (!version.is_string() ||
        version.get<std::string>().rfind("1.", 0) != 0) {
        throw SchemaError("unsupported schema_version " + version.dump() +
                          " (expected 1.x)");
    }
    const json &system = io::require(j, "system");
    const std::size_t dim = io::require_count(system, "dim");
    StateVector state = io::state_from_json(io::require(system, "state"), kInputNormTol);
    if (state.dim() != dim) {
        throw DimensionError("system state has " + std::to_string(state.dim()) +
                             " amplitudes but dim is " + std::to_string(dim));
    }

    ObservableSpec observable = observable_from_json(io::require(j, "observable"));
    std::optional<ObservableSpec> reference;
    if (j.contains("reference")) {
        reference = observable_from_json(j.at("reference"));
    }

    const json &procs = io::require(j, "processes");
    if (!procs.is_array()) {
        throw SchemaError("\"processes\" must be an array");
    }
    std::vector<ProcessSpec> processes;
    for (const auto &p : procs) {
        processes.push_back(process_from_json(p, dim));
    }

    const json &experiment = io::require(j, "experiment");
    if (!experiment.is_string()) {
        throw SchemaError("\"experiment\" must be a string");
    }

    Scenario s{version.get<std::string>(),
               std::move(state),
               std::move(observable),
               std::move(reference),
               std::move(processes),
               experiment_from_string(experiment.get<std::string>()),
               j.contains("params") ? params_from_json(j.at("params")) : Params{}};
    return s;
}

json to_json(const Scenario &s) {
    json processes = json::array();
    for (const auto &p : s.processes) {
        processes.push_back(process_to_json(p));
    }
    json j{{"schema_version", s.schema_version},
           {"system",
            {{"dim", s.state.dim()}, {"state", io::to_json(s.state.amplitudes())}}},
           {"observable", observable_to_json(s.observable)},
           {"processes", std::move(processes)},
           {"experiment", to_string(s.experiment)},
           {"params", params_to_json(s.params)}};
    if (s.reference) {
        j["reference"] = observable_to_json(*s.reference);
    }
    return j;
}

ResolvedScenario resolve(const Scenario &s) {
    const double cluster = s.params.tolerances.cluster;
    const std::size_t dim = s.state.dim();

    Povm observable = observable_as_povm(s.observable, cluster);
    if (observable.dim() != dim) {
        throw DimensionError("observable acts on dimension " +
                             std::to_string(observable.dim()) +
                             " but the system has dimension " + std::to_string(dim));
    }
    std::optional<Pvm> reference;
    if (s.reference) {
        reference = accurate_counterpart(*s.reference, cluster);
        if (!reference) {
            throw SchemaError("reference observable must be accurate (projective)");
        }
    } else {
        reference = accurate_counterpart(s.observable, cluster);
    }
    if (reference && reference->dim() != dim) {
        throw DimensionError("reference observable dimension does not match the "
                             "system");
    }

    std::vector<MeasurementProcess> processes;
    for (const auto &spec : s.processes) {
        processes.push_back(instantiate(spec, s));
        if (processes.back().system_dim() != dim) {
            throw DimensionError("process acts on system dimension " +
                                 std::to_string(processes.back().system_dim()) +
                                 " but the system has dimension " +
                                 std::to_string(dim));
        }
    }

    if (processes.empty()) {
        throw SchemaError("at least one process is required");
    }
    if (needs_two_processes(s.experiment)) {
        if (processes.size() != 2) {
            throw SchemaError("experiment \"" + to_string(s.experiment) +
                              "\" needs exactly two processes");
        }
        const std::size_t compound =
            dim * processes[0].apparatus_dim() * processes[1].apparatus_dim();
        if (compound > kMaxCompoundDim) {
            throw DimensionError("joint compound dimension " +
                                 std::to_string(compound) + " exceeds cap " +
                                 std::to_string(kMaxCompoundDim));
        }
    }
    if ((s.experiment == Experiment::kReproduce || s.experiment == Experiment::kOit) &&
        !reference) {
        throw SchemaError("experiment \"" + to_string(s.experiment) +
                          "\" needs an accurate reference observable");
    }
    if (s.experiment == Experiment::kSample && s.params.n_samples == 0) {
        throw ParameterError("n_samples must be positive");
    }
    return {std::move(observable), std::move(reference), std::move(processes)};
}

json run_experiment(const Scenario &s) {
    const ResolvedScenario r = resolve(s);
    const Tolerances &tol = s.params.tolerances;
    json results = json::object();
    json diagnostics{{"tolerances", params_to_json(s.params).at("tolerances")}};

    switch (s.experiment) {
    case Experiment::kInduce: {
        results["observable_distribution"] = io::to_json(born_povm(r.observable, s.state));
        json list = json::array();
        for (const auto &p : r.processes) {
            const Povm induced = induced_povm(p);
            list.push_back({{"induced_povm", io::to_json(induced)},
                            {"projective", is_projective(induced)},
                            {"meter_distribution",
                             io::to_json(meter_distribution(p, s.state))},
                            {"induced_distribution",
                             io::to_json(born_povm(induced, s.state))}});
        }
        results["processes"] = std::move(list);
        break;
    }
    case Experiment::kReproduce: {
        results["reference_distribution"] = io::to_json(born_pvm(*r.reference, s.state));
        json list = json::array();
        for (const auto &p : r.processes) {
            const ReproducibilityReport rep =
                check_reproducibility(p, *r.reference, tol.reproducibility);
            list.push_back(
                {{"reproducible", rep.reproducible},
                 {"max_operator_deviation", rep.max_operator_deviation},
                 {"per_outcome_deviation",
                  per_outcome(rep.per_outcome_deviation, "deviation")},
                 {"meter_distribution", io::to_json(meter_distribution(p, s.state))}});
        }
        results["processes"] = std::move(list);
        break;
    }
    case Experiment::kJoint: {
        const JointScenario joint = compose_resolved(s, r);
        diagnostics["max_commutator"] = joint.max_commutator();
        results = joint_block(joint, joint_distribution(joint));
        break;
    }
    case Experiment::kOit: {
        const JointScenario joint = compose_resolved(s, r);
        diagnostics["max_commutator"] = joint.max_commutator();
        json deviations = json::array();
        for (const auto &p : r.processes) {
            deviations.push_back(
                check_reproducibility(p, *r.reference, tol.reproducibility)
                    .max_operator_deviation);
        }
        diagnostics["reproducibility_deviation"] = std::move(deviations);
        const OitReport rep = verify_oit(joint, *r.reference, tol.reproducibility);
        results = joint_block(joint, joint_distribution(joint));
        results["off_diagonal_mass"] = rep.off_diagonal_mass;
        results["diagonal"] = per_outcome(rep.diagonal, "probability");
        results["expected_diagonal"] = per_outcome(rep.expected_diagonal, "probability");
        results["max_diagonal_deviation"] = rep.max_diagonal_deviation;
        results["intersubjective"] = rep.intersubjective;
        break;
    }
    case Experiment::kSample: {
        const JointScenario joint = compose_resolved(s, r);
        diagnostics["max_commutator"] = joint.max_commutator();
        const SampleResult sample =
            sample_outcomes(joint, s.params.n_samples, s.params.seed);
        results = joint_block(joint, joint_distribution(joint));
        results["sample"] = {{"n", s.params.n_samples},
                             {"seed", s.params.seed},
                             {"counts", sample.counts},
                             {"empirical", io::to_json(sample.empirical)},
                             {"empirical_agreement", sample.empirical.agreement()},
                             {"disagreements", sample.disagreements}};
        break;
    }
    }

    return {{"schema_version", kSchemaVersion},
            {"experiment", to_string(s.experiment)},
            {"scenario", to_json(s)},
            {"results", std::move(results)},
            {"diagnostics", std::move(diagnostics)}};
}

double agreement_at_eta(const Scenario &s, double eta) {
    if (!std::holds_alternative<UnsharpObservable>(s.observable)) {
        throw SchemaError("sweep over eta needs an \"unsharp\" observable");
    }
    unsharp_qubit_povm(eta); // range check
    Scenario copy = s;
    copy.observable = UnsharpObservable{eta};
    copy.experiment = Experiment::kJoint;
    const ResolvedScenario r = resolve(copy);
    return agreement_probability(compose_resolved(copy, r));
}

} // namespace qmeasure::scenario
