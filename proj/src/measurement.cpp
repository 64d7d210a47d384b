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

#include "qmeasure/measurement.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "qmeasure/errors.hpp"

namespace qmeasure {

namespace {

constexpr double kCompletionDependenceTol = 1e-8;

// I_H (x) |xi>, a (dim H * dim K) x dim H isometry.
Matrix embed_apparatus_state(std::size_t system_dim, const Vector &xi) {
    const auto dh = static_cast<Eigen::Index>(system_dim);
    const Eigen::Index dk = xi.size();
    Matrix w = Matrix::Zero(dh * dk, dh);
    for (Eigen::Index i = 0; i < dh; ++i) {
        w.block(i * dk, i, dk, 1) = xi;
    }
    return w;
}

// Cyclic shift |k> -> |k+1 mod n>, raised to the power j.
Matrix shift_power(std::size_t n, std::size_t j) {
    const auto k = static_cast<Eigen::Index>(n);
    Matrix s = Matrix::Zero(k, k);
    for (Eigen::Index col = 0; col < k; ++col) {
        s((col + static_cast<Eigen::Index>(j)) % k, col) = 1.0;
    }
    return s;
}

// Orthogonalizes `v` against the first `filled` columns of `q` (two passes).
Vector orthogonalize(const Matrix &q, const std::vector<Eigen::Index> &filled,
                     Vector v) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const Eigen::Index c : filled) {
            v -= q.col(c) * q.col(c).dot(v);
        }
    }
    return v;
}

} // namespace

MeasurementProcess::MeasurementProcess(std::size_t system_dim,
                                       StateVector apparatus_state,
                                       ComplexMatrix interaction, Pvm meter,
                                       std::size_t max_compound_dim)
    : system_dim_(system_dim), apparatus_state_(std::move(apparatus_state)),
      interaction_(std::move(interaction)), meter_(std::move(meter)) {
    const std::size_t compound = system_dim_ * apparatus_state_.dim();
    if (system_dim_ < 1) {
        throw DimensionError("measuring process: system dimension must be >= 1");
    }
    if (compound > max_compound_dim) {
        throw DimensionError("measuring process: compound dimension " +
                             std::to_string(compound) + " exceeds cap " +
                             std::to_string(max_compound_dim));
    }
    if (meter_.dim() != apparatus_state_.dim()) {
        throw DimensionError("measuring process: meter acts on dimension " +
                             std::to_string(meter_.dim()) +
                             " but apparatus state has dimension " +
                             std::to_string(apparatus_state_.dim()));
    }
    if (!interaction_.is_square() || interaction_.rows() != compound) {
        throw DimensionError("measuring process: interaction must be " +
                             std::to_string(compound) + "x" +
                             std::to_string(compound));
    }
    if (!is_unitary(interaction_)) {
        throw InvariantError("measuring process: interaction is not unitary");
    }
}

EvolvedMeter evolve_meter(const MeasurementProcess &p) {
    const Matrix &u = p.interaction().eigen();
    const ComplexMatrix id_h = ComplexMatrix::identity(p.system_dim());
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(p.meter().size());
    for (const auto &e : p.meter().projectors()) {
        const Matrix lifted = tensor(id_h, e).eigen();
        projectors.emplace_back(Matrix(u.adjoint() * lifted * u));
    }
    return {p.meter().outcomes(), std::move(projectors)};
}

OutcomeDistribution meter_distribution(const MeasurementProcess &p,
                                       const StateVector &psi) {
    if (psi.dim() != p.system_dim()) {
        throw DimensionError("meter_distribution: state dimension " +
                             std::to_string(psi.dim()) + " vs system dimension " +
                             std::to_string(p.system_dim()));
    }
    const StateVector joint = tensor(psi, p.apparatus_state());
    return born_pvm(evolve_meter(p), joint);
}

Povm induced_povm(const MeasurementProcess &p) {
    const EvolvedMeter evolved = evolve_meter(p);
    const Matrix w =
        embed_apparatus_state(p.system_dim(), p.apparatus_state().amplitudes());
    std::vector<ComplexMatrix> effects;
    effects.reserve(evolved.size());
    for (const auto &e : evolved.projectors()) {
        effects.emplace_back(Matrix(w.adjoint() * e.eigen() * w));
    }
    return {evolved.outcomes(), std::move(effects)};
}

ReproducibilityReport check_reproducibility(const MeasurementProcess &p,
                                            const Pvm &a, double tol) {
    if (a.dim() != p.system_dim()) {
        throw DimensionError("check_reproducibility: observable dimension " +
                             std::to_string(a.dim()) + " vs system dimension " +
                             std::to_string(p.system_dim()));
    }
    const Povm induced = induced_povm(p);
    const ComplexMatrix zero(a.dim(), a.dim());

    ReproducibilityReport report;
    report.tolerance = tol;
    auto record = [&](double x, double dev) {
        report.per_outcome_deviation.emplace_back(x, dev);
        report.max_operator_deviation = std::max(report.max_operator_deviation, dev);
    };
    for (std::size_t k = 0; k < induced.size(); ++k) {
        const double x = induced.outcomes()[k];
        const auto match = a.find(x);
        record(x, max_abs_diff(induced.effects()[k],
                               match ? a.projectors()[*match] : zero));
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double x = a.outcomes()[k];
        if (!induced.find(x)) {
            record(x, max_abs(a.projectors()[k]));
        }
    }
    report.reproducible = report.max_operator_deviation <= tol;
    return report;
}

ComplexMatrix pointer_projector(std::size_t n, std::size_t j) {
    const Vector e = StateVector::basis(n, j).amplitudes();
    return ComplexMatrix::outer(e, e);
}

MeasurementProcess von_neumann_model(const Pvm &a) {
    const std::size_t n = a.size();
    const std::size_t dh = a.dim();
    const auto big = static_cast<Eigen::Index>(dh * n);
    Matrix u = Matrix::Zero(big, big);
    std::vector<ComplexMatrix> pointers;
    for (std::size_t j = 0; j < n; ++j) {
        u += tensor(a.projectors()[j], ComplexMatrix(shift_power(n, j))).eigen();
        pointers.push_back(pointer_projector(n, j));
    }
    return {dh, StateVector::basis(n, 0), ComplexMatrix(std::move(u)),
            Pvm(a.outcomes(), std::move(pointers))};
}

MeasurementProcess dilation_model(const Povm &povm, DilationOptions options) {
    const std::size_t n = povm.size();
    const auto dh = static_cast<Eigen::Index>(povm.dim());
    const auto dk = static_cast<Eigen::Index>(n);
    const Eigen::Index big = dh * dk;

    Matrix u = Matrix::Zero(big, big);
    std::vector<bool> fixed(static_cast<std::size_t>(big), false);
    std::vector<Eigen::Index> filled;
    // Column |i>|0> of U is V|i> = sum_j sqrt(Pi_j)|i> (x) |j>.
    for (std::size_t j = 0; j < n; ++j) {
        const Matrix root = sqrt_psd(povm.effects()[j]).eigen();
        for (Eigen::Index row = 0; row < dh; ++row) {
            for (Eigen::Index i = 0; i < dh; ++i) {
                u(row * dk + static_cast<Eigen::Index>(j), i * dk) = root(row, i);
            }
        }
    }
    for (Eigen::Index i = 0; i < dh; ++i) {
        fixed[static_cast<std::size_t>(i * dk)] = true;
        filled.push_back(i * dk);
    }

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    Eigen::Index candidate = 0;
    Eigen::Index next_free = 0;
    auto advance_free = [&] {
        while (next_free < big && fixed[static_cast<std::size_t>(next_free)]) {
            ++next_free;
        }
    };
    advance_free();
    // Random candidates are in general position; the standard basis spans
    // the whole space, so both loops terminate.
    while (next_free < big) {
        Vector v = Vector::Zero(big);
        if (options.completion == Completion::kStandardBasis) {
            if (candidate >= big) {
                throw InvariantError("dilation: unitary completion failed");
            }
            v(candidate++) = 1.0;
        } else {
            for (Eigen::Index r = 0; r < big; ++r) {
                v(r) = Complex(normal(rng), normal(rng));
            }
        }
        v = orthogonalize(u, filled, std::move(v));
        const double norm = v.norm();
        if (norm <= kCompletionDependenceTol) {
            continue;
        }
        u.col(next_free) = v / norm;
        fixed[static_cast<std::size_t>(next_free)] = true;
        filled.push_back(next_free);
        advance_free();
    }

    std::vector<ComplexMatrix> pointers;
    for (std::size_t j = 0; j < n; ++j) {
        pointers.push_back(pointer_projector(n, j));
    }
    return {povm.dim(), StateVector::basis(n, 0), ComplexMatrix(std::move(u)),
            Pvm(povm.outcomes(), std::move(pointers))};
}

} // namespace qmeasure
