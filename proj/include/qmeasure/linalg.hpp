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
 * Dense complex linear algebra used by every other module: checked matrix
 * and state carriers, Kronecker products, structural predicates and the
 * spectral decomposition of Hermitian operators with degeneracy merging.
 *
 * All operator comparisons use the max-entry modulus norm
 * max_ij |a_ij - b_ij|.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace qmeasure {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Normalization tolerance for state vectors.
inline constexpr double kNormTol = 1e-10;
/// Tolerance for operator identities (idempotency, resolution of unity, ...).
inline constexpr double kOperatorTol = 1e-9;
/// Eigenvalues closer than this are merged into a single outcome.
inline constexpr double kClusterTol = 1e-8;

/**
 * @brief Dense complex matrix with finite entries and non-zero extent.
 *
 * Row index of a Kronecker product follows r = r_a * b.rows + r_b, i.e. the
 * left factor is the slow index.
 */
class ComplexMatrix {
  public:
    /// Zero matrix of the given shape.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of an Eigen matrix after checking the invariants.
    explicit ComplexMatrix(Matrix m);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix
    from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix diagonal(const std::vector<Complex> &diag);
    /// |u><v|
    static ComplexMatrix outer(const Vector &u, const Vector &v);

    [[nodiscard]] std::size_t rows() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] std::size_t cols() const noexcept {
        return static_cast<std::size_t>(m_.cols());
    }
    [[nodiscard]] bool is_square() const noexcept {
        return m_.rows() == m_.cols();
    }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    [[nodiscard]] const Matrix &eigen() const noexcept { return m_; }

    friend ComplexMatrix operator+(const ComplexMatrix &a,
                                   const ComplexMatrix &b);
    friend ComplexMatrix operator-(const ComplexMatrix &a,
                                   const ComplexMatrix &b);
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix &a);

  private:
    Matrix m_;
};

/**
 * @brief Normalized pure state. ||psi|| = 1 within kNormTol.
 */
class StateVector {
  public:
    /// Throws InvariantError unless the vector is normalized.
    explicit StateVector(Vector amplitudes);

    /// Rescales a non-zero vector to unit norm.
    static StateVector normalized(const Vector &v);
    /// Computational basis state |k> in C^dim.
    static StateVector basis(std::size_t dim, std::size_t k);

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const Vector &amplitudes() const noexcept { return amps_; }

  private:
    Vector amps_;
};

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector tensor(const StateVector &a, const StateVector &b);

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &a);
Vector apply(const ComplexMatrix &a, const Vector &v);
Vector apply(const ComplexMatrix &a, const StateVector &v);
/// <u|v>, antilinear in the first argument.
Complex inner(const Vector &u, const Vector &v);
Complex inner(const StateVector &u, const StateVector &v);
/// <v|A|v>
Complex expectation(const ComplexMatrix &a, const StateVector &v);

/// AB - BA
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// max_ij |a_ij|
double max_abs(const ComplexMatrix &a);
/// max_ij |a_ij - b_ij|; DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &a, double tol = kOperatorTol);
bool is_unitary(const ComplexMatrix &a, double tol = kOperatorTol);
/// P^2 = P and P^dagger = P.
bool is_projector(const ComplexMatrix &a, double tol = kOperatorTol);

/**
 * @brief Spectral decomposition A = sum_i x_i P_i of a Hermitian operator.
 *
 * Eigenvalues are strictly increasing. Each P_i projects onto the span of
 * all eigenvectors whose eigenvalues were merged into x_i.
 */
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<ComplexMatrix> projectors;
};

/**
 * @brief Decompose a Hermitian operator into eigenvalues and eigenprojectors.
 *
 * Sorted eigenvalues are merged by single linkage: consecutive values at
 * most @p cluster_tol apart share a cluster. The reported value is the
 * arithmetic mean of the cluster.
 *
 * @throws NotHermitianError if @p a is not Hermitian within kOperatorTol.
 */
SpectralDecomposition spectral_decompose(const ComplexMatrix &a,
                                         double cluster_tol = kClusterTol);

/// Eigenvalues of a Hermitian operator in ascending order, unclustered.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a);

/**
 * @brief Principal square root of a positive semidefinite operator.
 *
 * Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative
 * raises InvariantError.
 */
ComplexMatrix sqrt_psd(const ComplexMatrix &a);

} // namespace qmeasure
