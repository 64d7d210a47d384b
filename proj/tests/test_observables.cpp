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
#include <numbers>

#include <gtest/gtest.h>

#include "qmeasure/errors.hpp"
#include "qmeasure/observables.hpp"
#include "support/random_ops.hpp"

using namespace qmeasure;
using qmeasure::testsupport::Rng;
namespace gen = qmeasure::testsupport;

namespace {

ComplexMatrix sigma_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }
ComplexMatrix sigma_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }

StateVector uniform_superposition(std::size_t n) {
    return StateVector::normalized(Vector::Ones(static_cast<Eigen::Index>(n)));
}

} // namespace

TEST(Pvm, FromDegenerateDiagonalObservable) {
    const Pvm pvm = pvm_from_observable(ComplexMatrix::diagonal({3.0, 3.0, 7.0}));
    ASSERT_EQ(pvm.size(), 2u);
    EXPECT_NEAR(pvm.outcomes()[0], 3.0, 1e-12);
    EXPECT_NEAR(pvm.outcomes()[1], 7.0, 1e-12);
    EXPECT_LT(max_abs_diff(pvm.projectors()[0], ComplexMatrix::diagonal({1.0, 1.0, 0.0})),
              1e-12);
    EXPECT_LT(max_abs_diff(pvm.projectors()[1], ComplexMatrix::diagonal({0.0, 0.0, 1.0})),
              1e-12);

    const OutcomeDistribution d = born_pvm(pvm, uniform_superposition(3));
    EXPECT_NEAR(d.probability(3.0), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(d.probability(7.0), 1.0 / 3.0, 1e-12);
    EXPECT_EQ(d.probability(5.0), 0.0);
}

TEST(Pvm, SortsOutcomes) {
    const ComplexMatrix p0 = ComplexMatrix::diagonal({1.0, 0.0});
    const ComplexMatrix p1 = ComplexMatrix::diagonal({0.0, 1.0});
    const Pvm pvm({2.0, -1.0}, {p0, p1});
    EXPECT_EQ(pvm.outcomes()[0], -1.0);
    EXPECT_EQ(max_abs_diff(pvm.projectors()[0], p1), 0.0);
}

TEST(Pvm, RejectsInvalidFamilies) {
    const ComplexMatrix p0 = ComplexMatrix::diagonal({1.0, 0.0});
    const ComplexMatrix p1 = ComplexMatrix::diagonal({0.0, 1.0});
    // Does not resolve the identity.
    EXPECT_THROW(Pvm({0.0}, {p0}), InvariantError);
    // Not a projector.
    EXPECT_THROW(Pvm({0.0, 1.0}, {Complex(0.5) * ComplexMatrix::identity(2),
                                  Complex(0.5) * ComplexMatrix::identity(2)}),
                 InvariantError);
    // Duplicate labels.
    EXPECT_THROW(Pvm({1.0, 1.0}, {p0, p1}), InvariantError);
    // Mixed dimensions.
    EXPECT_THROW(Pvm({0.0, 1.0}, {p0, ComplexMatrix::identity(3)}), DimensionError);
    EXPECT_THROW(Pvm({0.0}, {p0, p1}), DimensionError);
}

TEST(Pvm, NonHermitianObservableRejected) {
    EXPECT_THROW(pvm_from_observable(ComplexMatrix::from_rows({{0, 1}, {0, 0}})),
                 NotHermitianError);
}

TEST(Povm, UnsharpQubitEffects) {
    const Povm p = unsharp_qubit_povm(0.8);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.outcomes()[0], 1.0);
    EXPECT_EQ(p.outcomes()[1], -1.0);
    EXPECT_LT(max_abs_diff(p.effects()[0], ComplexMatrix::diagonal({0.9, 0.1})), 1e-15);
    EXPECT_LT(max_abs_diff(p.effects()[1], ComplexMatrix::diagonal({0.1, 0.9})), 1e-15);

    const OutcomeDistribution d = born_povm(p, StateVector::basis(2, 0));
    EXPECT_NEAR(d.probability(1.0), 0.9, 1e-12);
    EXPECT_NEAR(d.probability(-1.0), 0.1, 1e-12);
}

TEST(Povm, UnsharpParameterRange) {
    EXPECT_THROW(unsharp_qubit_povm(1.2), ParameterError);
    EXPECT_THROW(unsharp_qubit_povm(-0.1), ParameterError);
    EXPECT_THROW(unsharp_qubit_povm(std::nan("")), ParameterError);
    EXPECT_TRUE(is_projective(unsharp_qubit_povm(1.0)));
    EXPECT_FALSE(is_projective(unsharp_qubit_povm(0.5)));
    EXPECT_LT(max_abs_diff(unsharp_qubit_povm(0.0).effects()[0],
                           Complex(0.5) * ComplexMatrix::identity(2)),
              1e-15);
}

TEST(Povm, TrineIsValidAndNotProjective) {
    const Povm t = trine_povm();
    ASSERT_EQ(t.size(), 3u);
    EXPECT_FALSE(is_projective(t));
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto &e : t.effects()) {
        sum += e.eigen();
        EXPECT_NEAR(std::real(e.eigen().trace()), 2.0 / 3.0, 1e-12);
    }
    EXPECT_LT(max_abs_diff(ComplexMatrix(sum), ComplexMatrix::identity(2)), 1e-12);
    // |0> gives 2/3, 1/6, 1/6: cos^2 of the half-angles 0, pi/3, 2pi/3 times 2/3.
    const OutcomeDistribution d = born_povm(t, StateVector::basis(2, 0));
    EXPECT_NEAR(d.probability(0.0), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(d.probability(1.0), 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(d.probability(2.0), 1.0 / 6.0, 1e-12);
}

TEST(Povm, RejectsSubNormalizedFamily) {
    const ComplexMatrix e = Complex(0.45) * ComplexMatrix::identity(2);
    try {
        Povm({0.0, 1.0}, {e, e});
        FAIL() << "expected InvariantError";
    } catch (const InvariantError &err) {
        EXPECT_NE(std::string(err.what()).find("normalization deviation"),
                  std::string::npos);
    }
}

TEST(Povm, RejectsNegativeOrNonHermitianEffects) {
    const ComplexMatrix neg = ComplexMatrix::diagonal({-0.5, 0.0});
    const ComplexMatrix rest = ComplexMatrix::diagonal({1.5, 1.0});
    EXPECT_THROW(Povm({0.0, 1.0}, {neg, rest}), InvariantError);
    const ComplexMatrix nh = ComplexMatrix::from_rows({{0.5, 0.1}, {0.0, 0.5}});
    const ComplexMatrix nh2 = ComplexMatrix::from_rows({{0.5, -0.1}, {0.0, 0.5}});
    EXPECT_THROW(Povm({0.0, 1.0}, {nh, nh2}), NotHermitianError);
}

TEST(Povm, PvmRoundTrip) {
    const Pvm a = pvm_from_observable(sigma_x());
    const Povm p = as_povm(a);
    EXPECT_TRUE(is_projective(p));
    const Pvm back = as_pvm(p);
    ASSERT_EQ(back.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(back.outcomes()[i], a.outcomes()[i]);
        EXPECT_LT(max_abs_diff(back.projectors()[i], a.projectors()[i]), 1e-12);
    }
    EXPECT_THROW(as_pvm(trine_povm()), InvariantError);
}

TEST(OutcomeDistribution, ClampsAndValidates) {
    const OutcomeDistribution d({0.0, 1.0}, {-1e-13, 1.0});
    EXPECT_EQ(d.probabilities()[0], 0.0);
    EXPECT_THROW(OutcomeDistribution({0.0, 1.0}, {-1e-6, 1.0 + 1e-6}), InvariantError);
    EXPECT_THROW(OutcomeDistribution({0.0, 1.0}, {0.5, 0.4}), InvariantError);
    EXPECT_THROW(OutcomeDistribution({0.0}, {0.5, 0.5}), DimensionError);
}

TEST(Born, DimensionMismatchThrows) {
    const Pvm a = pvm_from_observable(sigma_z());
    EXPECT_THROW(born_pvm(a, StateVector::basis(3, 0)), DimensionError);
    EXPECT_THROW(born_povm(trine_povm(), StateVector::basis(3, 0)), DimensionError);
}

TEST(Born, PvmAndPovmAgreeOnRandomInstances) {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = gen::uniform(1, 6, rng);
        const std::size_t k = gen::uniform(1, dim, rng);
        const Pvm a = pvm_from_observable(gen::random_observable(dim, k, rng));
        ASSERT_EQ(a.size(), k);
        const StateVector psi = gen::random_state(dim, rng);
        const OutcomeDistribution d1 = born_pvm(a, psi);
        const OutcomeDistribution d2 = born_povm(as_povm(a), psi);
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_NEAR(d1.probabilities()[i], d2.probabilities()[i], 1e-12);
            total += d1.probabilities()[i];
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(Born, RandomPovmsGiveDistributions) {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = gen::uniform(1, 5, rng);
        const std::size_t n = gen::uniform(1, 5, rng);
        const Povm p = gen::random_povm(dim, n, rng);
        const OutcomeDistribution d = born_povm(p, gen::random_state(dim, rng));
        double total = 0.0;
        for (double x : d.probabilities()) {
            EXPECT_GE(x, 0.0);
            total += x;
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}
