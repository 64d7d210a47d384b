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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmeasure/errors.hpp"
#include "qmeasure/intersubjectivity.hpp"
#include "qmeasure/scenario.hpp"
#include "qmeasure/serialization.hpp"

namespace py = pybind11;
using namespace qmeasure;

namespace {

ComplexMatrix to_matrix(const Matrix &m) { return ComplexMatrix(m); }

std::vector<ComplexMatrix> to_matrices(const std::vector<Matrix> &ms) {
    std::vector<ComplexMatrix> out;
    out.reserve(ms.size());
    for (const auto &m : ms) {
        out.emplace_back(m);
    }
    return out;
}

std::vector<Matrix> to_arrays(const std::vector<ComplexMatrix> &ms) {
    std::vector<Matrix> out;
    out.reserve(ms.size());
    for (const auto &m : ms) {
        out.push_back(m.eigen());
    }
    return out;
}

StateVector to_state(const Vector &v) { return StateVector(v); }

py::dict distribution_dict(const OutcomeDistribution &d) {
    py::dict out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[py::float_(d.outcomes()[i])] = d.probabilities()[i];
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Indirect quantum measurement models and intersubjectivity checks.";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
    py::register_exception<NotHermitianError>(m, "NotHermitianError", error.ptr());
    py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", error.ptr());
    py::register_exception<NonCommutingMetersError>(m, "NonCommutingMetersError",
                                                    error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
    py::register_exception<io::SchemaError>(m, "SchemaError", error.ptr());

    py::class_<Pvm>(m, "Pvm")
        .def(py::init([](std::vector<double> outcomes, const std::vector<Matrix> &ops) {
                 return Pvm(std::move(outcomes), to_matrices(ops));
             }),
             py::arg("outcomes"), py::arg("projectors"))
        .def_property_readonly("outcomes", &Pvm::outcomes)
        .def_property_readonly("projectors",
                               [](const Pvm &p) { return to_arrays(p.projectors()); })
        .def_property_readonly("dim", &Pvm::dim)
        .def("__len__", &Pvm::size);

    py::class_<Povm>(m, "Povm")
        .def(py::init([](std::vector<double> outcomes, const std::vector<Matrix> &ops) {
                 return Povm(std::move(outcomes), to_matrices(ops));
             }),
             py::arg("outcomes"), py::arg("effects"))
        .def_property_readonly("outcomes", &Povm::outcomes)
        .def_property_readonly("effects",
                               [](const Povm &p) { return to_arrays(p.effects()); })
        .def_property_readonly("dim", &Povm::dim)
        .def("__len__", &Povm::size);

    py::class_<MeasurementProcess>(m, "MeasurementProcess")
        .def(py::init([](std::size_t system_dim, const Vector &xi, const Matrix &u,
                         Pvm meter) {
                 return MeasurementProcess(system_dim, to_state(xi), to_matrix(u),
                                           std::move(meter));
             }),
             py::arg("system_dim"), py::arg("apparatus_state"), py::arg("interaction"),
             py::arg("meter"))
        .def_property_readonly("system_dim", &MeasurementProcess::system_dim)
        .def_property_readonly("apparatus_dim", &MeasurementProcess::apparatus_dim)
        .def_property_readonly("apparatus_state",
                               [](const MeasurementProcess &p) {
                                   return p.apparatus_state().amplitudes();
                               })
        .def_property_readonly(
            "interaction",
            [](const MeasurementProcess &p) { return p.interaction().eigen(); })
        .def_property_readonly("meter", &MeasurementProcess::meter);

    py::class_<ReproducibilityReport>(m, "ReproducibilityReport")
        .def_readonly("reproducible", &ReproducibilityReport::reproducible)
        .def_readonly("max_operator_deviation", &ReproducibilityReport::max_operator_deviation)
        .def_readonly("per_outcome_deviation", &ReproducibilityReport::per_outcome_deviation)
        .def_readonly("tolerance", &ReproducibilityReport::tolerance);

    py::class_<JointScenario>(m, "JointScenario")
        .def_property_readonly("max_commutator", &JointScenario::max_commutator)
        .def_property_readonly("is_local", &JointScenario::is_local)
        .def_property_readonly("process1", &JointScenario::process1)
        .def_property_readonly("process2", &JointScenario::process2);

    py::class_<JointDistribution>(m, "JointDistribution")
        .def_property_readonly("outcomes1", &JointDistribution::outcomes1)
        .def_property_readonly("outcomes2", &JointDistribution::outcomes2)
        .def_property_readonly("table", &JointDistribution::probabilities)
        .def("probability", &JointDistribution::probability, py::arg("x"), py::arg("y"))
        .def("agreement", &JointDistribution::agreement);

    py::class_<OitReport>(m, "OitReport")
        .def_readonly("off_diagonal_mass", &OitReport::off_diagonal_mass)
        .def_readonly("diagonal", &OitReport::diagonal)
        .def_readonly("expected_diagonal", &OitReport::expected_diagonal)
        .def_readonly("max_diagonal_deviation", &OitReport::max_diagonal_deviation)
        .def_readonly("intersubjective", &OitReport::intersubjective);

    py::class_<SampleResult>(m, "SampleResult")
        .def_readonly("pairs", &SampleResult::pairs)
        .def_readonly("counts", &SampleResult::counts)
        .def_readonly("disagreements", &SampleResult::disagreements);

    m.def(
        "pvm_from_observable",
        [](const Matrix &a, double tol) { return pvm_from_observable(to_matrix(a), tol); },
        py::arg("a"), py::arg("cluster_tol") = kClusterTol);
    m.def(
        "born_pvm",
        [](const Pvm &p, const Vector &psi) { return distribution_dict(born_pvm(p, to_state(psi))); },
        py::arg("pvm"), py::arg("psi"));
    m.def(
        "born_povm",
        [](const Povm &p, const Vector &psi) {
            return distribution_dict(born_povm(p, to_state(psi)));
        },
        py::arg("povm"), py::arg("psi"));
    m.def("as_povm", &as_povm, py::arg("pvm"));
    m.def("is_projective", &is_projective, py::arg("povm"), py::arg("tol") = kOperatorTol);
    m.def("unsharp_qubit_povm", &unsharp_qubit_povm, py::arg("eta"));
    m.def("trine_povm", &trine_povm);

    m.def("von_neumann_model", &von_neumann_model, py::arg("a"));
    m.def(
        "dilation_model",
        [](const Povm &p, const std::string &completion, std::uint64_t seed) {
            DilationOptions opts;
            if (completion == "random") {
                opts.completion = Completion::kRandom;
            } else if (completion != "standard") {
                throw ParameterError("completion must be \"standard\" or \"random\"");
            }
            opts.seed = seed;
            return dilation_model(p, opts);
        },
        py::arg("povm"), py::arg("completion") = "standard", py::arg("seed") = 0);
    m.def("induced_povm", &induced_povm, py::arg("process"));
    m.def(
        "meter_distribution",
        [](const MeasurementProcess &p, const Vector &psi) {
            return distribution_dict(meter_distribution(p, to_state(psi)));
        },
        py::arg("process"), py::arg("psi"));
    m.def("check_reproducibility", &check_reproducibility, py::arg("process"),
          py::arg("a"), py::arg("tol") = kReproducibilityTol);

    m.def(
        "compose",
        [](const Vector &psi, const MeasurementProcess &p1, const MeasurementProcess &p2,
           double commutation_tol) {
            ComposeOptions opts;
            opts.commutation_tol = commutation_tol;
            return compose(to_state(psi), p1, p2, opts);
        },
        py::arg("psi"), py::arg("process1"), py::arg("process2"),
        py::arg("commutation_tol") = kCommutationTol);
    m.def("joint_distribution", &joint_distribution, py::arg("scenario"));
    m.def("verify_oit", &verify_oit, py::arg("scenario"), py::arg("a"),
          py::arg("tol") = kReproducibilityTol);
    m.def("agreement_probability", &agreement_probability, py::arg("scenario"));
    m.def("sample_outcomes", &sample_outcomes, py::arg("scenario"), py::arg("n"),
          py::arg("seed") = 0);

    m.def(
        "run_scenario",
        [](const std::string &text) {
            const auto j = nlohmann::json::parse(text);
            return scenario::run_experiment(scenario::parse_scenario(j)).dump();
        },
        py::arg("scenario_json"),
        "Run a scenario given as JSON text and return the report as JSON text.");
}
