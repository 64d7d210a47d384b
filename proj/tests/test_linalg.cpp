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
#include <limits>

#include <gtest/gtest.h>

#include "qmeasure/errors.hpp"
#include "qmeasure/linalg.hpp"
#include "support/random_ops.hpp"

using namespace qmeasure;
using qmeasure::testsupport::Rng;
namespace gen = qmeasure::testsupport;

namespace {

const Complex I1{0.0, 1.0};

ComplexMatrix sigma_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }
ComplexMatrix sigma_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

Matrix reconstruct(const SpectralDecomposition &sd, std::size_t n) {
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
        sum += sd.eigenvalues[i] * sd.projectors[i].eigen();
    }
    return sum;
}

void expect_decomposition_invariants(const ComplexMatrix &a,
                                     const SpectralDecomposition &sd) {
    const std::size_t n = a.rows();
    ASSERT_EQ(sd.eigenvalues.size(), sd.projectors.size());
    for (std::size_t i = 1; i < sd.eigenvalues.size(); ++i) {
        EXPECT_LT(sd.eigenvalues[i - 1], sd.eigenvalues[i]);
    }
    Matrix total = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
        EXPECT_TRUE(is_projector(sd.projectors[i], 1e-9));
        total += sd.projectors[i].eigen();
        for (std::size_t j = 0; j < sd.projectors.size(); ++j) {
            if (i != j) {
                EXPECT_LT(max_abs(matmul(sd.projectors[i], sd.projectors[j])), 1e-9);
            }
        }
    }
    EXPECT_LT(max_abs_diff(ComplexMatrix(total), ComplexMatrix::identity(n)), 1e-9);
    EXPECT_LT(max_abs_diff(ComplexMatrix(reconstruct(sd, n)), a), 1e-9);
}

} // namespace

TEST(ComplexMatrix, RejectsNonFiniteEntries) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(ComplexMatrix{m}, InvariantError);
    EXPECT_THROW(ComplexMatrix(Matrix(0, 3)), DimensionError);
}

TEST(StateVector, NormalizationIsEnforced) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(StateVector{v}, InvariantError);
    const StateVector s = StateVector::normalized(v);
    EXPECT_NEAR(std::abs(inner(s, s) - 1.0), 0.0, 1e-15);
    EXPECT_THROW(StateVector::normalized(Vector::Zero(3)), InvariantError);
    EXPECT_THROW(StateVector::basis(2, 2), DimensionError);
}

TEST(Tensor, IdentityTimesIdentity) {
    EXPECT_EQ(max_abs_diff(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                           ComplexMatrix::identity(4)),
              0.0);
}

TEST(Tensor, SigmaZTimesIdentityIsDiagonal) {
    const ComplexMatrix expected = ComplexMatrix::diagonal({1, 1, -1, -1});
    EXPECT_EQ(max_abs_diff(tensor(sigma_z(), ComplexMatrix::identity(2)), expected), 0.0);
}

TEST(Tensor, ProductOfRankOneProjectors) {
    // |0><0| (x) |1><1| = |01><01|, a single 1 at (1, 1).
    const ComplexMatrix p0 = ComplexMatrix::from_rows({{1, 0}, {0, 0}});
    const ComplexMatrix p1 = ComplexMatrix::from_rows({{0, 0}, {0, 1}});
    const ComplexMatrix t = tensor(p0, p1);
    ASSERT_EQ(t.rows(), 4u);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            EXPECT_EQ(t(r, c), (r == 1 && c == 1) ? Complex(1.0) : Complex(0.0));
        }
    }
}

TEST(Tensor, RectangularShapesAndIndexConvention) {
    const ComplexMatrix a = ComplexMatrix::from_rows({{1, 2, 3}});
    const ComplexMatrix b = ComplexMatrix::from_rows({{1}, {I1}});
    const ComplexMatrix t = tensor(a, b);
    ASSERT_EQ(t.rows(), 2u);
    ASSERT_EQ(t.cols(), 3u);
    // row r = r_a * b.rows + r_b, col c = c_a * b.cols + c_b
    EXPECT_EQ(t(1, 2), Complex(3.0) * I1);
    EXPECT_EQ(t(0, 1), Complex(2.0));
}

TEST(Tensor, AssociativityIsExact) {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto da = gen::uniform(1, 4, rng);
        const auto db = gen::uniform(1, 4, rng);
        const auto dc = gen::uniform(1, 4, rng);
        const ComplexMatrix a(gen::gaussian_matrix(da, gen::uniform(1, 4, rng), rng));
        const ComplexMatrix b(gen::gaussian_matrix(db, gen::uniform(1, 4, rng), rng));
        const ComplexMatrix c(gen::gaussian_matrix(dc, gen::uniform(1, 4, rng), rng));
        const ComplexMatrix left = tensor(tensor(a, b), c);
        const ComplexMatrix right = tensor(a, tensor(b, c));
        ASSERT_EQ(left.rows(), right.rows());
        ASSERT_EQ(left.cols(), right.cols());
        // Each entry is the same triple product, possibly associated
        // differently; equal to rounding.
        EXPECT_LE(max_abs_diff(left, right), 1e-14);
    }
}

TEST(Products, AdjointIsAnInvolution) {
    Rng rng(3);
    const ComplexMatrix a(gen::gaussian_matrix(3, 5, rng));
    EXPECT_EQ(max_abs_diff(adjoint(adjoint(a)), a), 0.0);
    EXPECT_EQ(adjoint(a).rows(), 5u);
}

TEST(Products, UnitaryTimesAdjointIsIdentity) {
    Rng rng(4);
    const ComplexMatrix u = gen::random_unitary(5, rng);
    EXPECT_LT(max_abs_diff(matmul(u, adjoint(u)), ComplexMatrix::identity(5)), 1e-12);
}

TEST(Products, InnerOfStateWithItselfIsOne) {
    Rng rng(5);
    for (std::size_t d = 1; d <= 6; ++d) {
        const StateVector s = gen::random_state(d, rng);
        EXPECT_NEAR(std::abs(inner(s, s) - 1.0), 0.0, 1e-12);
    }
}

TEST(Products, InnerIsAntilinearInFirstArgument) {
    Vector u(2), v(2);
    u << I1, 0.0;
    v << 1.0, 0.0;
    EXPECT_EQ(inner(u, v), -I1);
}

TEST(Products, DimensionMismatchThrows) {
    const ComplexMatrix a = ComplexMatrix::identity(2);
    const ComplexMatrix b = ComplexMatrix::identity(3);
    EXPECT_THROW(matmul(a, b), DimensionError);
    EXPECT_THROW(qmeasure::apply(a, Vector(Vector::Zero(3))), DimensionError);
    EXPECT_THROW(inner(Vector(Vector::Zero(2)), Vector(Vector::Zero(3))), DimensionError);
    EXPECT_THROW(max_abs_diff(a, b), DimensionError);
    EXPECT_THROW(a + b, DimensionError);
}

TEST(Predicates, Examples) {
    EXPECT_TRUE(is_hermitian(sigma_x(), 1e-9));
    EXPECT_TRUE(is_unitary(ComplexMatrix::diagonal({1.0, I1}), 1e-9));
    const ComplexMatrix half = Complex(0.5) * (ComplexMatrix::identity(2) + sigma_z());
    EXPECT_TRUE(is_projector(half, 1e-9));

    EXPECT_FALSE(is_hermitian(ComplexMatrix::from_rows({{0, 1}, {0, 0}})));
    EXPECT_FALSE(is_unitary(Complex(2.0) * ComplexMatrix::identity(2)));
    EXPECT_FALSE(is_projector(sigma_z()));
}

TEST(Predicates, NonSquareThrows) {
    const ComplexMatrix r(2, 3);
    EXPECT_THROW(is_hermitian(r), DimensionError);
    EXPECT_THROW(is_unitary(r), DimensionError);
    EXPECT_THROW(is_projector(r), DimensionError);
}

TEST(SpectralDecompose, PauliZ) {
    const SpectralDecomposition sd = spectral_decompose(sigma_z());
    ASSERT_EQ(sd.eigenvalues.size(), 2u);
    EXPECT_NEAR(sd.eigenvalues[0], -1.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[1], 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(sd.projectors[0], ComplexMatrix::diagonal({0, 1})), 1e-12);
    EXPECT_LT(max_abs_diff(sd.projectors[1], ComplexMatrix::diagonal({1, 0})), 1e-12);
}

TEST(SpectralDecompose, IdentityCollapsesToOneOutcome) {
    const SpectralDecomposition sd = spectral_decompose(ComplexMatrix::identity(3));
    ASSERT_EQ(sd.eigenvalues.size(), 1u);
    EXPECT_NEAR(sd.eigenvalues[0], 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(sd.projectors[0], ComplexMatrix::identity(3)), 1e-12);
}

TEST(SpectralDecompose, ClustersNearDegenerateEigenvaluesByMean) {
    const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 1.0 + 4e-9, 2.0});
    const SpectralDecomposition sd = spectral_decompose(a, 1e-8);
    ASSERT_EQ(sd.eigenvalues.size(), 2u);
    EXPECT_NEAR(sd.eigenvalues[0], 1.0 + 2e-9, 1e-15);
    EXPECT_NEAR(std::real(sd.projectors[0].eigen().trace()), 2.0, 1e-12);

    const SpectralDecomposition fine = spectral_decompose(a, 1e-10);
    EXPECT_EQ(fine.eigenvalues.size(), 3u);
}

TEST(SpectralDecompose, RejectsNonHermitian) {
    EXPECT_THROW(spectral_decompose(ComplexMatrix::from_rows({{0, 1}, {0, 0}})),
                 NotHermitianError);
    EXPECT_THROW(spectral_decompose(ComplexMatrix(2, 3)), DimensionError);
}

TEST(SpectralDecompose, RandomFiveByFiveReconstructs) {
    Rng rng(2026);
    const ComplexMatrix h = gen::random_hermitian(5, rng);
    expect_decomposition_invariants(h, spectral_decompose(h));
}

TEST(SpectralDecompose, PropertyRandomHermitianWithDegeneracy) {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto dim = gen::uniform(1, 7, rng);
        const auto outcomes = gen::uniform(1, dim, rng);
        const ComplexMatrix a = gen::random_observable(dim, outcomes, rng);
        const SpectralDecomposition sd = spectral_decompose(a);
        EXPECT_EQ(sd.eigenvalues.size(), outcomes);
        expect_decomposition_invariants(a, sd);
    }
}

TEST(SqrtPsd, SquaresBack) {
    Rng rng(12);
    const Matrix b = gen::gaussian_matrix(4, 4, rng);
    const ComplexMatrix p(Matrix(b * b.adjoint()));
    const ComplexMatrix r = sqrt_psd(p);
    EXPECT_TRUE(is_hermitian(r, 1e-12));
    EXPECT_LT(max_abs_diff(matmul(r, r), p), 1e-10);
}

TEST(SqrtPsd, ClampsTinyNegativesAndRejectsLargeOnes) {
    const ComplexMatrix tiny = ComplexMatrix::diagonal({1.0, -5e-11});
    EXPECT_EQ(sqrt_psd(tiny)(1, 1), Complex(0.0));
    EXPECT_THROW(sqrt_psd(ComplexMatrix::diagonal({1.0, -1e-6})), InvariantError);
}
