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

#include "qmeasure/serialization.hpp"

#include <cmath>
#include <vector>

namespace qmeasure::io {

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SchemaError("complex entries must be [re, im] number pairs, got " +
                          j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> labels_from_json(const json &j) {
    if (!j.is_array()) {
        throw SchemaError("\"outcomes\" must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : j) {
        if (!x.is_number()) {
            throw SchemaError("outcome labels must be numbers, got " + x.dump());
        }
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<ComplexMatrix> operators_from_json(const json &j) {
    if (!j.is_array()) {
        throw SchemaError("\"operators\" must be an array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : j) {
        out.push_back(matrix_from_json(m));
    }
    return out;
}

json operator_list(const std::vector<double> &outcomes,
                   const std::vector<ComplexMatrix> &ops) {
    json list = json::array();
    for (const auto &op : ops) {
        list.push_back(to_json(op));
    }
    return {{"outcomes", outcomes}, {"operators", std::move(list)}};
}

} // namespace

const json &require(const json &j, const std::string &key) {
    if (!j.is_object()) {
        throw SchemaError("expected an object holding \"" + key + "\"");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError("missing field \"" + key + "\"");
    }
    return *it;
}

double require_number(const json &j, const std::string &key) {
    const json &v = require(j, key);
    if (!v.is_number()) {
        throw SchemaError("field \"" + key + "\" must be a number");
    }
    return v.get<double>();
}

std::size_t require_count(const json &j, const std::string &key) {
    const json &v = require(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw SchemaError("field \"" + key + "\" must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

json to_json(const ComplexMatrix &m) {
    json data = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            data.push_back(complex_to_json(m(r, c)));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json to_json(const Pvm &pvm) {
    return operator_list(pvm.outcomes(), pvm.projectors());
}

json to_json(const Povm &povm) {
    return operator_list(povm.outcomes(), povm.effects());
}

json to_json(const MeasurementProcess &p) {
    return {{"system_dim", p.system_dim()},
            {"apparatus_dim", p.apparatus_dim()},
            {"xi", to_json(p.apparatus_state().amplitudes())},
            {"unitary", to_json(p.interaction())},
            {"meter", to_json(p.meter())}};
}

json to_json(const OutcomeDistribution &d) {
    json out = json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        out.push_back({{"outcome", d.outcomes()[i]},
                       {"probability", d.probabilities()[i]}});
    }
    return out;
}

json to_json(const JointDistribution &d) {
    return {{"outcomes1", d.outcomes1()},
            {"outcomes2", d.outcomes2()},
            {"table", d.probabilities()}};
}

ComplexMatrix matrix_from_json(const json &j) {
    const std::size_t rows = require_count(j, "rows");
    const std::size_t cols = require_count(j, "cols");
    const json &data = require(j, "data");
    if (rows == 0 || cols == 0) {
        throw SchemaError("matrix dimensions must be positive");
    }
    if (!data.is_array() || data.size() != rows * cols) {
        throw SchemaError("matrix \"data\" must hold rows*cols = " +
                          std::to_string(rows * cols) + " entries");
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < data.size(); ++k) {
        m(static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols)) =
            complex_from_json(data[k]);
    }
    return ComplexMatrix(std::move(m));
}

Vector vector_from_json(const json &j) {
    if (!j.is_array() || j.empty()) {
        throw SchemaError("amplitude arrays must be non-empty arrays of [re, im]");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k]);
    }
    return v;
}

StateVector state_from_json(const json &j, double tol) {
    const Vector v = vector_from_json(j);
    const double norm = v.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
        throw InvariantError("state vector is not normalized (norm = " +
                             format_real(norm) + ", tolerance " +
                             format_real(tol) + ")");
    }
    return StateVector::normalized(v);
}

Pvm pvm_from_json(const json &j) {
    return {labels_from_json(require(j, "outcomes")),
            operators_from_json(require(j, "operators"))};
}

Povm povm_from_json(const json &j) {
    return {labels_from_json(require(j, "outcomes")),
            operators_from_json(require(j, "operators"))};
}

MeasurementProcess process_from_json(const json &j) {
    const std::size_t system_dim = require_count(j, "system_dim");
    StateVector xi = state_from_json(require(j, "xi"));
    if (j.contains("apparatus_dim") &&
        require_count(j, "apparatus_dim") != xi.dim()) {
        throw DimensionError("apparatus_dim does not match the length of xi");
    }
    return {system_dim, std::move(xi), matrix_from_json(require(j, "unitary")),
            pvm_from_json(require(j, "meter"))};
}

} // namespace qmeasure::io
