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

#include "qmeasure/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmeasure/errors.hpp"

namespace qmeasure {

namespace {

std::string shape(const ComplexMatrix &a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_square(const ComplexMatrix &a, const char *what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": expected square matrix, got " +
                             shape(a));
    }
}

constexpr double kSqrtClamp = 1e-10;

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(Matrix::Zero(static_cast<Eigen::Index>(rows),
                                 static_cast<Eigen::Index>(cols))) {}

ComplexMatrix::ComplexMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.cols() < 1) {
        throw DimensionError("matrix must have at least one row and column");
    }
    if (!m_.allFinite()) {
        throw InvariantError("matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return ComplexMatrix(Matrix::Identity(k, k));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const auto nrows = static_cast<Eigen::Index>(rows.size());
    const auto ncols =
        nrows > 0 ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
    Matrix m(nrows, ncols);
    Eigen::Index r = 0;
    for (const auto &row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != ncols) {
            throw DimensionError("ragged row list");
        }
        Eigen::Index c = 0;
        for (const auto &v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex> &diag) {
    Vector d(static_cast<Eigen::Index>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) {
        d(static_cast<Eigen::Index>(i)) = diag[i];
    }
    return ComplexMatrix(Matrix(d.asDiagonal()));
}

ComplexMatrix ComplexMatrix::outer(const Vector &u, const Vector &v) {
    return ComplexMatrix(Matrix(u * v.adjoint()));
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("sum of " + shape(a) + " and " + shape(b));
    }
    return ComplexMatrix(Matrix(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("difference of " + shape(a) + " and " + shape(b));
    }
    return ComplexMatrix(Matrix(a.m_ - b.m_));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix &a) {
    return ComplexMatrix(Matrix(s * a.m_));
}

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) {
        throw DimensionError("state vector must have dimension >= 1");
    }
    if (!amps_.allFinite()) {
        throw InvariantError("state vector has non-finite amplitudes");
    }
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        throw InvariantError("state vector is not normalized (norm = " +
                             format_real(norm) + ")");
    }
}

StateVector StateVector::normalized(const Vector &v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvariantError("cannot normalize a zero or non-finite vector");
    }
    return StateVector(v / norm);
}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw DimensionError("basis index " + std::to_string(k) +
                             " out of range for dimension " +
                             std::to_string(dim));
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return StateVector(std::move(v));
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Matrix &ma = a.eigen();
    const Matrix &mb = b.eigen();
    Matrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) =
                ma(i, j) * mb;
        }
    }
    return ComplexMatrix(std::move(out));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const Vector &va = a.amplitudes();
    const Vector &vb = b.amplitudes();
    Vector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    }
    return StateVector::normalized(out);
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul of " + shape(a) + " and " + shape(b));
    }
    return ComplexMatrix(Matrix(a.eigen() * b.eigen()));
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    return ComplexMatrix(Matrix(a.eigen().adjoint()));
}

Vector apply(const ComplexMatrix &a, const Vector &v) {
    if (a.cols() != static_cast<std::size_t>(v.size())) {
        throw DimensionError("apply " + shape(a) + " to vector of length " +
                             std::to_string(v.size()));
    }
    return a.eigen() * v;
}

Vector apply(const ComplexMatrix &a, const StateVector &v) {
    return apply(a, v.amplitudes());
}

Complex inner(const Vector &u, const Vector &v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner product of vectors of length " +
                             std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    }
    return u.dot(v); // Eigen conjugates the left operand
}

Complex inner(const StateVector &u, const StateVector &v) {
    return inner(u.amplitudes(), v.amplitudes());
}

Complex expectation(const ComplexMatrix &a, const StateVector &v) {
    require_square(a, "expectation");
    return inner(v.amplitudes(), apply(a, v));
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_square(a, "commutator");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("commutator of " + shape(a) + " and " + shape(b));
    }
    return ComplexMatrix(Matrix(a.eigen() * b.eigen() - b.eigen() * a.eigen()));
}

double max_abs(const ComplexMatrix &a) {
    return a.eigen().cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("comparison of " + shape(a) + " and " + shape(b));
    }
    return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix &a, double tol) {
    require_square(a, "is_hermitian");
    return (a.eigen() - a.eigen().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix &a, double tol) {
    require_square(a, "is_unitary");
    const Matrix &m = a.eigen();
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol &&
           (m * m.adjoint() - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const ComplexMatrix &a, double tol) {
    if (!is_hermitian(a, tol)) {
        return false;
    }
    const Matrix &m = a.eigen();
    return (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix &a,
                                         double cluster_tol) {
    require_square(a, "spectral_decompose");
    if (!is_hermitian(a)) {
        throw NotHermitianError("spectral_decompose: operator is not Hermitian");
    }
    if (!(cluster_tol >= 0.0)) {
        throw ParameterError("cluster tolerance must be non-negative");
    }
    const Matrix herm = 0.5 * (a.eigen() + a.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw InvariantError("eigensolver failed to converge");
    }
    const Eigen::VectorXd &vals = solver.eigenvalues(); // ascending
    const Matrix &vecs = solver.eigenvectors();

    SpectralDecomposition out;
    Eigen::Index start = 0;
    const Eigen::Index n = vals.size();
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i < n && vals(i) - vals(i - 1) <= cluster_tol) {
            continue;
        }
        const Eigen::Index len = i - start;
        const auto block = vecs.middleCols(start, len);
        out.eigenvalues.push_back(vals.segment(start, len).mean());
        out.projectors.emplace_back(Matrix(block * block.adjoint()));
        start = i;
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a) {
    require_square(a, "hermitian_eigenvalues");
    if (!is_hermitian(a)) {
        throw NotHermitianError("hermitian_eigenvalues: operator is not Hermitian");
    }
    const Matrix herm = 0.5 * (a.eigen() + a.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd &vals = solver.eigenvalues();
    return {vals.data(), vals.data() + vals.size()};
}

ComplexMatrix sqrt_psd(const ComplexMatrix &a) {
    require_square(a, "sqrt_psd");
    if (!is_hermitian(a)) {
        throw NotHermitianError("sqrt_psd: operator is not Hermitian");
    }
    const Matrix herm = 0.5 * (a.eigen() + a.eigen().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    Eigen::VectorXd vals = solver.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < -kSqrtClamp) {
            throw InvariantError("sqrt_psd: operator has negative eigenvalue " +
                                 format_real(vals(i)));
        }
        vals(i) = std::sqrt(std::max(vals(i), 0.0));
    }
    const Matrix &v = solver.eigenvectors();
    return ComplexMatrix(Matrix(v * vals.cast<Complex>().asDiagonal() * v.adjoint()));
}

} // namespace qmeasure
