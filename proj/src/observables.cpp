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

#include "qmeasure/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qmeasure/errors.hpp"

namespace qmeasure {

namespace {

constexpr double kImagResidueTol = 1e-12;

std::string label(double x) { return format_real(x); }

// Hermitian part; the checks below accept operators Hermitian within
// kOperatorTol, storage keeps the exact Hermitian part.
ComplexMatrix hermitian_part(const ComplexMatrix &a) {
    return ComplexMatrix(Matrix(0.5 * (a.eigen() + a.eigen().adjoint())));
}

std::size_t check_operator_list(const std::vector<double> &outcomes,
                                const std::vector<ComplexMatrix> &ops,
                                const char *kind) {
    if (outcomes.empty()) {
        throw InvariantError(std::string(kind) + " needs at least one outcome");
    }
    if (outcomes.size() != ops.size()) {
        throw DimensionError(std::string(kind) + ": " +
                             std::to_string(outcomes.size()) + " outcomes but " +
                             std::to_string(ops.size()) + " operators");
    }
    const std::size_t dim = ops.front().rows();
    for (const auto &op : ops) {
        if (!op.is_square() || op.rows() != dim) {
            throw DimensionError(std::string(kind) +
                                 ": operators must be square and equal-sized");
        }
    }
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!std::isfinite(outcomes[i])) {
            throw InvariantError(std::string(kind) + ": non-finite outcome label");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(outcomes[i] - outcomes[j]) <= kLabelTol) {
                throw InvariantError(std::string(kind) + ": duplicate outcome " +
                                     label(outcomes[i]));
            }
        }
    }
    return dim;
}

void check_resolution_of_unity(const std::vector<ComplexMatrix> &ops,
                               std::size_t dim, const char *kind) {
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
    for (const auto &op : ops) {
        sum += op.eigen();
    }
    const double dev =
        (sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
    if (dev > kOperatorTol) {
        throw InvariantError(std::string(kind) +
                             ": operators do not sum to the identity "
                             "(normalization deviation " +
                             format_real(dev) + ")");
    }
}

double quadratic_form(const ComplexMatrix &op, const StateVector &psi) {
    const Complex v = expectation(op, psi);
    if (std::abs(v.imag()) > kImagResidueTol) {
        throw InvariantError("quadratic form has imaginary residue " +
                             format_real(v.imag()));
    }
    return v.real();
}

} // namespace

std::optional<std::size_t> find_label(const std::vector<double> &labels,
                                      double x, double tol) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (std::abs(labels[i] - x) <= tol) {
            return i;
        }
    }
    return std::nullopt;
}

Pvm::Pvm(std::vector<double> outcomes, std::vector<ComplexMatrix> projectors)
    : dim_(check_operator_list(outcomes, projectors, "PVM")) {
    std::vector<std::size_t> order(outcomes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return outcomes[a] < outcomes[b];
    });
    outcomes_.reserve(order.size());
    projectors_.reserve(order.size());
    for (const std::size_t k : order) {
        if (!is_projector(projectors[k])) {
            throw InvariantError("PVM: operator for outcome " +
                                 label(outcomes[k]) + " is not a projector");
        }
        outcomes_.push_back(outcomes[k]);
        projectors_.push_back(hermitian_part(projectors[k]));
    }
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        for (std::size_t j = i + 1; j < projectors_.size(); ++j) {
            const double overlap =
                (projectors_[i].eigen() * projectors_[j].eigen())
                    .cwiseAbs()
                    .maxCoeff();
            if (overlap > kOperatorTol) {
                throw InvariantError("PVM: projectors for outcomes " +
                                     label(outcomes_[i]) + " and " +
                                     label(outcomes_[j]) + " are not orthogonal");
            }
        }
    }
    check_resolution_of_unity(projectors_, dim_, "PVM");
}

Povm::Povm(std::vector<double> outcomes, std::vector<ComplexMatrix> effects)
    : outcomes_(std::move(outcomes)),
      dim_(check_operator_list(outcomes_, effects, "POVM")) {
    effects_.reserve(effects.size());
    for (std::size_t k = 0; k < effects.size(); ++k) {
        if (!is_hermitian(effects[k])) {
            throw NotHermitianError("POVM: effect for outcome " +
                                 label(outcomes_[k]) + " is not Hermitian");
        }
        ComplexMatrix e = hermitian_part(effects[k]);
        const auto vals = hermitian_eigenvalues(e);
        if (vals.front() < -kOperatorTol || vals.back() > 1.0 + kOperatorTol) {
            throw InvariantError("POVM: effect for outcome " +
                                 label(outcomes_[k]) +
                                 " has eigenvalues outside [0, 1]");
        }
        effects_.push_back(std::move(e));
    }
    check_resolution_of_unity(effects_, dim_, "POVM");
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> outcomes,
                                         std::vector<double> probabilities)
    : outcomes_(std::move(outcomes)), probs_(std::move(probabilities)) {
    if (outcomes_.size() != probs_.size()) {
        throw DimensionError("distribution: label and probability counts differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        double &p = probs_[i];
        if (!std::isfinite(p) || p < -kProbabilityClamp) {
            throw InvariantError("distribution: probability " + format_real(p) +
                                 " for outcome " + label(outcomes_[i]) +
                                 " is negative");
        }
        p = std::max(p, 0.0);
        total += p;
    }
    if (std::abs(total - 1.0) > kDistributionSumTol) {
        throw InvariantError("distribution: probabilities sum to " +
                             format_real(total));
    }
}

double OutcomeDistribution::probability(double x) const {
    const auto k = find_label(outcomes_, x);
    return k ? probs_[*k] : 0.0;
}

Pvm pvm_from_observable(const ComplexMatrix &a, double cluster_tol) {
    SpectralDecomposition sd = spectral_decompose(a, cluster_tol);
    return {std::move(sd.eigenvalues), std::move(sd.projectors)};
}

OutcomeDistribution born_pvm(const Pvm &pvm, const StateVector &psi) {
    if (psi.dim() != pvm.dim()) {
        throw DimensionError("born_pvm: state dimension " +
                             std::to_string(psi.dim()) + " vs PVM dimension " +
                             std::to_string(pvm.dim()));
    }
    std::vector<double> probs;
    probs.reserve(pvm.size());
    for (const auto &p : pvm.projectors()) {
        probs.push_back(quadratic_form(p, psi));
    }
    return {pvm.outcomes(), std::move(probs)};
}

OutcomeDistribution born_povm(const Povm &povm, const StateVector &psi) {
    if (psi.dim() != povm.dim()) {
        throw DimensionError("born_povm: state dimension " +
                             std::to_string(psi.dim()) + " vs POVM dimension " +
                             std::to_string(povm.dim()));
    }
    std::vector<double> probs;
    probs.reserve(povm.size());
    for (const auto &e : povm.effects()) {
        probs.push_back(quadratic_form(e, psi));
    }
    return {povm.outcomes(), std::move(probs)};
}

Povm as_povm(const Pvm &pvm) { return {pvm.outcomes(), pvm.projectors()}; }

bool is_projective(const Povm &povm, double tol) {
    const auto &effects = povm.effects();
    for (std::size_t i = 0; i < effects.size(); ++i) {
        if (!is_projector(effects[i], tol)) {
            return false;
        }
        for (std::size_t j = i + 1; j < effects.size(); ++j) {
            if ((effects[i].eigen() * effects[j].eigen()).cwiseAbs().maxCoeff() >
                tol) {
                return false;
            }
        }
    }
    return true;
}

Pvm as_pvm(const Povm &povm, double tol) {
    if (!is_projective(povm, tol)) {
        throw InvariantError("POVM is not projective");
    }
    return {povm.outcomes(), povm.effects()};
}

Povm unsharp_qubit_povm(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw ParameterError("unsharpness eta must lie in [0, 1], got " +
                             format_real(eta));
    }
    const double hi = 0.5 * (1.0 + eta);
    const double lo = 0.5 * (1.0 - eta);
    return {{1.0, -1.0},
            {ComplexMatrix::diagonal({hi, lo}), ComplexMatrix::diagonal({lo, hi})}};
}

Povm trine_povm() {
    std::vector<double> outcomes;
    std::vector<ComplexMatrix> effects;
    for (int k = 0; k < 3; ++k) {
        const double half_angle = std::numbers::pi * k / 3.0;
        Vector phi(2);
        phi << std::cos(half_angle), std::sin(half_angle);
        outcomes.push_back(k);
        effects.push_back(Complex(2.0 / 3.0) * ComplexMatrix::outer(phi, phi));
    }
    return {std::move(outcomes), std::move(effects)};
}

} // namespace qmeasure
