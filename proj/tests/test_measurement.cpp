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

#include <cmath>

#include <gtest/gtest.h>

#include "qmeasure/errors.hpp"
#include "qmeasure/measurement.hpp"
#include "support/random_ops.hpp"

using namespace qmeasure;
using qmeasure::testsupport::Rng;
namespace gen = qmeasure::testsupport;

namespace {

ComplexMatrix sigma_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

// Independent oracle for the induced effect of outcome index j: entry (a, b)
// is sum over pointer states m in the range of M_j of
// conj(<m-component of U|a, xi>) * <m-component of U|b, xi>, with all index
// arithmetic written out explicitly.
Matrix brute_force_effect(const MeasurementProcess &p, std::size_t j) {
    const auto dh = static_cast<Eigen::Index>(p.system_dim());
    const auto dk = static_cast<Eigen::Index>(p.apparatus_dim());
    const Matrix &u = p.interaction().eigen();
    const Matrix &m = p.meter().projectors()[j].eigen();
    const Vector &xi = p.apparatus_state().amplitudes();

    // Columns phi_a = U (|a> (x) xi).
    Matrix phi = Matrix::Zero(dh * dk, dh);
    for (Eigen::Index a = 0; a < dh; ++a) {
        for (Eigen::Index row = 0; row < dh * dk; ++row) {
            Complex acc = 0.0;
            for (Eigen::Index k = 0; k < dk; ++k) {
                acc += u(row, a * dk + k) * xi(k);
            }
            phi(row, a) = acc;
        }
    }
    Matrix out = Matrix::Zero(dh, dh);
    for (Eigen::Index a = 0; a < dh; ++a) {
        for (Eigen::Index b = 0; b < dh; ++b) {
            Complex acc = 0.0;
            for (Eigen::Index h = 0; h < dh; ++h) {
                for (Eigen::Index k1 = 0; k1 < dk; ++k1) {
                    for (Eigen::Index k2 = 0; k2 < dk; ++k2) {
                        acc += std::conj(phi(h * dk + k1, a)) * m(k1, k2) *
                               phi(h * dk + k2, b);
                    }
                }
            }
            out(a, b) = acc;
        }
    }
    return out;
}

double povm_distance(const Povm &a, const Povm &b) {
    EXPECT_EQ(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto j = b.find(a.outcomes()[i]);
        if (!j) {
            ADD_FAILURE() << "outcome " << a.outcomes()[i] << " missing";
            return 1.0;
        }
        worst = std::max(worst, max_abs_diff(a.effects()[i], b.effects()[*j]));
    }
    return worst;
}

} // namespace

TEST(MeasurementProcess, Validation) {
    const Pvm meter = pvm_from_observable(sigma_z());
    EXPECT_THROW(MeasurementProcess(2, StateVector::basis(2, 0),
                                    Complex(2.0) * ComplexMatrix::identity(4), meter),
                 InvariantError);
    EXPECT_THROW(MeasurementProcess(2, StateVector::basis(2, 0),
                                    ComplexMatrix::identity(6), meter),
                 DimensionError);
    EXPECT_THROW(MeasurementProcess(2, StateVector::basis(3, 0),
                                    ComplexMatrix::identity(6), meter),
                 DimensionError);
    // dim(H) * dim(K) above the cap.
    EXPECT_THROW(MeasurementProcess(2, StateVector::basis(2, 0),
                                    ComplexMatrix::identity(4), meter, 3),
                 DimensionError);
}

TEST(MeasurementProcess, IdentityInteractionGivesTrivialPovm) {
    // U = I, xi = |0>, meter sigma_z on K: always reads +1.
    const MeasurementProcess p(2, StateVector::basis(2, 0), ComplexMatrix::identity(4),
                               pvm_from_observable(sigma_z()));
    const Povm e = induced_povm(p);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e.outcomes()[1], 1.0);
    EXPECT_LT(max_abs_diff(e.effects()[1], ComplexMatrix::identity(2)), 1e-12);
    EXPECT_LT(max_abs(e.effects()[0]), 1e-12);
}

TEST(VonNeumann, SigmaZUnitaryAndEvolvedMeter) {
    const Pvm a = pvm_from_observable(sigma_z());
    const MeasurementProcess p = von_neumann_model(a);
    EXPECT_EQ(p.apparatus_dim(), 2u);
    // Outcome -1 (index 0) shifts by 0, outcome +1 shifts by 1: a CNOT with
    // the control on the |1> = (-1) eigenvector flipped.
    const ComplexMatrix expected = ComplexMatrix::from_rows(
        {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    EXPECT_LT(max_abs_diff(p.interaction(), expected), 1e-12);

    const EvolvedMeter m = evolve_meter(p);
    ASSERT_EQ(m.size(), 2u);
    for (const auto &proj : m.projectors()) {
        EXPECT_NEAR(std::real(proj.eigen().trace()), 2.0, 1e-12);
        EXPECT_TRUE(is_projector(proj, 1e-9));
    }
}

TEST(VonNeumann, ReproducesObservable) {
    const Pvm a = pvm_from_observable(ComplexMatrix::diagonal({3.0, 3.0, 7.0}));
    const MeasurementProcess p = von_neumann_model(a);
    const ReproducibilityReport r = check_reproducibility(p, a);
    EXPECT_TRUE(r.reproducible);
    EXPECT_LT(r.max_operator_deviation, 1e-12);

    const StateVector psi = StateVector::normalized(Vector::Ones(3));
    const OutcomeDistribution d = meter_distribution(p, psi);
    EXPECT_NEAR(d.probability(3.0), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(d.probability(7.0), 1.0 / 3.0, 1e-12);
}

TEST(Dilation, UnsharpRoundTripAndReproducibilityGap) {
    const Povm target = unsharp_qubit_povm(0.8);
    const MeasurementProcess p = dilation_model(target);
    EXPECT_LT(povm_distance(induced_povm(p), target), 1e-10);

    const ReproducibilityReport r = check_reproducibility(p, pvm_from_observable(sigma_z()));
    EXPECT_FALSE(r.reproducible);
    EXPECT_NEAR(r.max_operator_deviation, 0.1, 1e-12);
}

TEST(Dilation, TrineRoundTripAndMeterStatistics) {
    const Povm target = trine_povm();
    const MeasurementProcess p = dilation_model(target);
    EXPECT_EQ(p.apparatus_dim(), 3u);
    EXPECT_LT(povm_distance(induced_povm(p), target), 1e-10);
    const OutcomeDistribution d = meter_distribution(p, StateVector::basis(2, 0));
    EXPECT_NEAR(d.probability(0.0), 2.0 / 3.0, 1e-12);
}

TEST(Dilation, CompletionDoesNotChangeInducedPovm) {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = gen::uniform(1, 4, rng);
        const std::size_t n = gen::uniform(1, 4, rng);
        const Povm target = gen::random_povm(dim, n, rng);
        const MeasurementProcess std_p = dilation_model(target);
        const MeasurementProcess rnd_p =
            dilation_model(target, {Completion::kRandom, 1000u + trial});
        if (n > 1) {
            // With one outcome the isometry already fills every column.
            EXPECT_GT(max_abs_diff(std_p.interaction(), rnd_p.interaction()), 1e-6);
        }
        EXPECT_LT(povm_distance(induced_povm(std_p), induced_povm(rnd_p)), 1e-10);
        EXPECT_LT(povm_distance(induced_povm(rnd_p), target), 1e-10);
    }
}

TEST(Reproducibility, LabelMismatchComparedAgainstZero) {
    // A meter labelled {0, 1} cannot reproduce sigma_z with labels {-1, +1}.
    const Pvm a = pvm_from_observable(sigma_z());
    const MeasurementProcess p =
        von_neumann_model(pvm_from_observable(ComplexMatrix::diagonal({1.0, 0.0})));
    const ReproducibilityReport r = check_reproducibility(p, a);
    EXPECT_FALSE(r.reproducible);
    EXPECT_NEAR(r.max_operator_deviation, 1.0, 1e-12);
    EXPECT_EQ(r.per_outcome_deviation.size(), 3u);
}

TEST(InducedPovm, MatchesBruteForceOracle) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dh = gen::uniform(1, 4, rng);
        const std::size_t dk = gen::uniform(1, 4, rng);
        const std::size_t k = gen::uniform(1, dk, rng);
        const MeasurementProcess p = gen::random_process(dh, dk, k, rng);
        const Povm e = induced_povm(p);
        ASSERT_EQ(e.size(), k);
        for (std::size_t j = 0; j < k; ++j) {
            EXPECT_LT(max_abs_diff(e.effects()[j], ComplexMatrix(brute_force_effect(p, j))),
                      1e-10);
        }
    }
}

TEST(InducedPovm, BornConsistencyOnRandomProcesses) {
    Rng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dh = gen::uniform(1, 4, rng);
        const std::size_t dk = gen::uniform(1, 4, rng);
        const MeasurementProcess p =
            gen::random_process(dh, dk, gen::uniform(1, dk, rng), rng);
        const StateVector psi = gen::random_state(dh, rng);
        const OutcomeDistribution lhs = meter_distribution(p, psi);
        const OutcomeDistribution rhs = born_povm(induced_povm(p), psi);
        ASSERT_EQ(lhs.size(), rhs.size());
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            EXPECT_NEAR(lhs.probabilities()[i], rhs.probabilities()[i], 1e-10);
        }
    }
}

TEST(PointerProjector, Shape) {
    const ComplexMatrix p = pointer_projector(3, 1);
    EXPECT_EQ(p(1, 1), Complex(1.0));
    EXPECT_EQ(max_abs(p), 1.0);
    EXPECT_THROW(pointer_projector(3, 3), DimensionError);
}
