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

#include "qmeasure/intersubjectivity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qmeasure/errors.hpp"

namespace qmeasure {

namespace {

constexpr double kJointImagTol = 1e-10;

void require_same_system(const StateVector &psi, const MeasurementProcess &p1,
                         const MeasurementProcess &p2) {
    if (p1.system_dim() != psi.dim() || p2.system_dim() != psi.dim()) {
        throw DimensionError("compose: state dimension " +
                             std::to_string(psi.dim()) +
                             " and process system dimensions " +
                             std::to_string(p1.system_dim()) + ", " +
                             std::to_string(p2.system_dim()) + " must agree");
    }
}

std::size_t checked_compound_dim(const StateVector &psi,
                                 const MeasurementProcess &p1,
                                 const MeasurementProcess &p2, std::size_t cap) {
    require_same_system(psi, p1, p2);
    const std::size_t d = psi.dim() * p1.apparatus_dim() * p2.apparatus_dim();
    if (d > cap) {
        throw DimensionError("compose: compound dimension " + std::to_string(d) +
                             " exceeds cap " + std::to_string(cap));
    }
    return d;
}

// Lift an operator on H (x) K_j to H (x) K1 (x) K2. `first` selects K1.
Matrix lift(const Matrix &op, std::size_t dh, std::size_t dk1, std::size_t dk2,
            bool first) {
    const auto h = static_cast<Eigen::Index>(dh);
    const auto k1 = static_cast<Eigen::Index>(dk1);
    const auto k2 = static_cast<Eigen::Index>(dk2);
    const Eigen::Index big = h * k1 * k2;
    Matrix out = Matrix::Zero(big, big);
    auto index = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) {
        return (a * k1 + b) * k2 + c;
    };
    if (first) {
        // op (x) I_{K2}
        for (Eigen::Index r = 0; r < h * k1; ++r) {
            for (Eigen::Index c = 0; c < h * k1; ++c) {
                if (op(r, c) == Complex(0.0)) {
                    continue;
                }
                for (Eigen::Index z = 0; z < k2; ++z) {
                    out(r * k2 + z, c * k2 + z) = op(r, c);
                }
            }
        }
        return out;
    }
    // op acts on (H, K2), identity on the middle factor K1.
    for (Eigen::Index ha = 0; ha < h; ++ha) {
        for (Eigen::Index za = 0; za < k2; ++za) {
            for (Eigen::Index hb = 0; hb < h; ++hb) {
                for (Eigen::Index zb = 0; zb < k2; ++zb) {
                    const Complex v = op(ha * k2 + za, hb * k2 + zb);
                    if (v == Complex(0.0)) {
                        continue;
                    }
                    for (Eigen::Index y = 0; y < k1; ++y) {
                        out(index(ha, y, za), index(hb, y, zb)) = v;
                    }
                }
            }
        }
    }
    return out;
}

EvolvedMeter evolve_lifted(const Matrix &lifted_u, const Pvm &meter,
                           std::size_t dh, std::size_t dk1, std::size_t dk2,
                           bool first) {
    const ComplexMatrix id_h = ComplexMatrix::identity(dh);
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(meter.size());
    for (const auto &e : meter.projectors()) {
        const Matrix local = tensor(id_h, e).eigen();
        const Matrix lifted = lift(local, dh, dk1, dk2, first);
        projectors.emplace_back(Matrix(lifted_u.adjoint() * lifted * lifted_u));
    }
    return {meter.outcomes(), std::move(projectors)};
}

// W = I_H (x) |xi1> (x) |xi2>, the embedding of H as prepared states.
Matrix preparation_isometry(std::size_t dh, const MeasurementProcess &p1,
                            const MeasurementProcess &p2) {
    const Vector xi = tensor(p1.apparatus_state(), p2.apparatus_state()).amplitudes();
    const auto h = static_cast<Eigen::Index>(dh);
    Matrix w = Matrix::Zero(h * xi.size(), h);
    for (Eigen::Index a = 0; a < h; ++a) {
        w.col(a).segment(a * xi.size(), xi.size()) = xi;
    }
    return w;
}

// max over pairs of ||[E1(x), E2(y)] W||_max
double max_pairwise_commutator(const EvolvedMeter &a, const EvolvedMeter &b,
                               const Matrix &w) {
    double worst = 0.0;
    for (const auto &x : a.projectors()) {
        for (const auto &y : b.projectors()) {
            const Matrix c = commutator(x, y).eigen() * w;
            worst = std::max(worst, c.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

std::vector<std::vector<double>> zero_table(std::size_t rows, std::size_t cols) {
    return std::vector<std::vector<double>>(rows, std::vector<double>(cols, 0.0));
}

} // namespace

JointScenario::JointScenario(StateVector psi, MeasurementProcess process1,
                             MeasurementProcess process2, ComposeOptions options)
    : psi_(std::move(psi)), process1_(std::move(process1)),
      process2_(std::move(process2)),
      lifted1_((checked_compound_dim(psi_, process1_, process2_,
                                     options.max_compound_dim),
                ComplexMatrix(lift(process1_.interaction().eigen(), psi_.dim(),
                                   process1_.apparatus_dim(),
                                   process2_.apparatus_dim(), true)))),
      lifted2_(lift(process2_.interaction().eigen(), psi_.dim(),
                    process1_.apparatus_dim(), process2_.apparatus_dim(), false)),
      composed_(matmul(lifted2_, lifted1_)),
      evolved1_(evolve_lifted(lifted1_.eigen(), process1_.meter(), psi_.dim(),
                              process1_.apparatus_dim(),
                              process2_.apparatus_dim(), true)),
      evolved2_(evolve_lifted(lifted2_.eigen(), process2_.meter(), psi_.dim(),
                              process1_.apparatus_dim(),
                              process2_.apparatus_dim(), false)),
      initial_(tensor(tensor(psi_, process1_.apparatus_state()),
                      process2_.apparatus_state())),
      max_commutator_(max_pairwise_commutator(
          evolved1_, evolved2_, preparation_isometry(psi_.dim(), process1_, process2_))),
      commutation_tol_(options.commutation_tol) {
    if (!(commutation_tol_ >= 0.0)) {
        throw ParameterError("commutation tolerance must be non-negative");
    }
}

JointScenario compose(const StateVector &psi, const MeasurementProcess &p1,
                      const MeasurementProcess &p2, ComposeOptions options) {
    return {psi, p1, p2, options};
}

CommutationCheck check_commutation(const JointScenario &s, double tol) {
    return {s.max_commutator() <= tol, s.max_commutator()};
}

JointDistribution::JointDistribution(std::vector<double> outcomes1,
                                     std::vector<double> outcomes2,
                                     std::vector<std::vector<double>> probabilities)
    : outcomes1_(std::move(outcomes1)), outcomes2_(std::move(outcomes2)),
      probs_(std::move(probabilities)) {
    if (probs_.size() != outcomes1_.size()) {
        throw DimensionError("joint distribution: row count mismatch");
    }
    double total = 0.0;
    for (auto &row : probs_) {
        if (row.size() != outcomes2_.size()) {
            throw DimensionError("joint distribution: column count mismatch");
        }
        for (double &p : row) {
            if (!std::isfinite(p) || p < -kProbabilityClamp) {
                throw InvariantError("joint distribution: negative probability " +
                                     format_real(p));
            }
            p = std::max(p, 0.0);
            total += p;
        }
    }
    if (std::abs(total - 1.0) > kDistributionSumTol) {
        throw InvariantError("joint distribution: probabilities sum to " +
                             format_real(total));
    }
}

double JointDistribution::probability(double x, double y) const {
    const auto i = find_label(outcomes1_, x);
    const auto j = find_label(outcomes2_, y);
    return (i && j) ? probs_[*i][*j] : 0.0;
}

OutcomeDistribution JointDistribution::marginal1() const {
    std::vector<double> m(outcomes1_.size(), 0.0);
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        for (double p : probs_[i]) {
            m[i] += p;
        }
    }
    return {outcomes1_, std::move(m)};
}

OutcomeDistribution JointDistribution::marginal2() const {
    std::vector<double> m(outcomes2_.size(), 0.0);
    for (const auto &row : probs_) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            m[j] += row[j];
        }
    }
    return {outcomes2_, std::move(m)};
}

double JointDistribution::agreement() const {
    double total = 0.0;
    for (std::size_t i = 0; i < outcomes1_.size(); ++i) {
        if (const auto j = find_label(outcomes2_, outcomes1_[i])) {
            total += probs_[i][*j];
        }
    }
    return total;
}

JointDistribution joint_distribution(const JointScenario &s) {
    if (!s.is_local()) {
        throw NonCommutingMetersError(
            "joint distribution undefined: meter commutator norm " +
            format_real(s.max_commutator()) + " exceeds tolerance " +
            format_real(s.commutation_tol()));
    }
    const Vector &psi = s.initial_state().amplitudes();
    std::vector<Vector> left;
    for (const auto &e : s.evolved1().projectors()) {
        left.push_back(e.eigen() * psi);
    }
    std::vector<Vector> right;
    for (const auto &e : s.evolved2().projectors()) {
        right.push_back(e.eigen() * psi);
    }
    auto table = zero_table(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            // <psi|E1 E2|psi> = <E1 psi|E2 psi> since E1 is Hermitian.
            const Complex v = left[i].dot(right[j]);
            if (std::abs(v.imag()) > kJointImagTol) {
                throw InvariantError("joint distribution: imaginary residue " +
                                     format_real(v.imag()));
            }
            table[i][j] = v.real();
        }
    }
    return {s.evolved1().outcomes(), s.evolved2().outcomes(), std::move(table)};
}

JointDistribution sequential_distribution(const JointScenario &s,
                                          CompositionOrder order) {
    const Matrix u = order == CompositionOrder::kSecondAfterFirst
                         ? s.composed_unitary().eigen()
                         : Matrix(s.lifted1().eigen() * s.lifted2().eigen());
    const Vector out = u * s.initial_state().amplitudes();
    const std::size_t dh = s.psi().dim();
    const std::size_t dk1 = s.process1().apparatus_dim();
    const std::size_t dk2 = s.process2().apparatus_dim();
    const Pvm &m1 = s.process1().meter();
    const Pvm &m2 = s.process2().meter();

    // P(x, y) = sum_h <out_h| E_M1(x) (x) E_M2(y) |out_h>, out_h being the
    // apparatus block of the evolved state for system basis index h.
    auto table = zero_table(m1.size(), m2.size());
    const auto k1 = static_cast<Eigen::Index>(dk1);
    const auto k2 = static_cast<Eigen::Index>(dk2);
    for (std::size_t i = 0; i < m1.size(); ++i) {
        for (std::size_t j = 0; j < m2.size(); ++j) {
            const Matrix pointer =
                tensor(m1.projectors()[i], m2.projectors()[j]).eigen();
            double p = 0.0;
            for (std::size_t h = 0; h < dh; ++h) {
                const Vector block =
                    out.segment(static_cast<Eigen::Index>(h) * k1 * k2, k1 * k2);
                p += block.dot(pointer * block).real();
            }
            table[i][j] = p;
        }
    }
    return {m1.outcomes(), m2.outcomes(), std::move(table)};
}

OitReport verify_oit(const JointScenario &s, const Pvm &a, double tol) {
    for (const auto *p : {&s.process1(), &s.process2()}) {
        const ReproducibilityReport r = check_reproducibility(*p, a, tol);
        if (!r.reproducible) {
            throw PreconditionError(
                "process does not reproduce the observable (max deviation " +
                format_real(r.max_operator_deviation) + " > " +
                format_real(tol) + ")");
        }
    }
    const JointDistribution joint = joint_distribution(s);

    OitReport report;
    report.tolerance = tol;
    const auto &o1 = joint.outcomes1();
    const auto &o2 = joint.outcomes2();
    for (std::size_t i = 0; i < o1.size(); ++i) {
        for (std::size_t j = 0; j < o2.size(); ++j) {
            if (std::abs(o1[i] - o2[j]) > kLabelTol) {
                report.off_diagonal_mass += joint.probabilities()[i][j];
            }
        }
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double x = a.outcomes()[k];
        const double observed = joint.probability(x, x);
        const double expected =
            apply(a.projectors()[k], s.psi()).squaredNorm();
        report.diagonal.emplace_back(x, observed);
        report.expected_diagonal.emplace_back(x, expected);
        report.max_diagonal_deviation =
            std::max(report.max_diagonal_deviation, std::abs(observed - expected));
    }
    report.intersubjective = report.off_diagonal_mass <= tol &&
                             report.max_diagonal_deviation <= tol;
    return report;
}

double agreement_probability(const JointScenario &s) {
    return joint_distribution(s).agreement();
}

SampleResult sample_outcomes(const JointScenario &s, std::size_t n,
                             std::uint64_t seed) {
    if (n == 0) {
        throw ParameterError("sample_outcomes: sample count must be positive");
    }
    const JointDistribution joint = joint_distribution(s);
    const auto &o1 = joint.outcomes1();
    const auto &o2 = joint.outcomes2();
    const std::size_t cols = o2.size();

    std::vector<double> cumulative;
    std::size_t last_positive = 0;
    double running = 0.0;
    for (std::size_t i = 0; i < o1.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double p = joint.probabilities()[i][j];
            running += p;
            cumulative.push_back(running);
            if (p > 0.0) {
                last_positive = i * cols + j;
            }
        }
    }

    std::mt19937_64 rng(seed);
    auto counts = std::vector<std::vector<std::size_t>>(
        o1.size(), std::vector<std::size_t>(cols, 0));
    std::vector<std::pair<double, double>> pairs;
    std::size_t disagreements = 0;
    pairs.reserve(n);
    for (std::size_t draw = 0; draw < n; ++draw) {
        // 53 random bits -> uniform in [0, 1).
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t cell = it == cumulative.end()
                               ? last_positive
                               : static_cast<std::size_t>(it - cumulative.begin());
        const std::size_t i = cell / cols;
        const std::size_t j = cell % cols;
        ++counts[i][j];
        pairs.emplace_back(o1[i], o2[j]);
        if (std::abs(o1[i] - o2[j]) > kLabelTol) {
            ++disagreements;
        }
    }

    auto freq = zero_table(o1.size(), cols);
    for (std::size_t i = 0; i < o1.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            freq[i][j] =
                static_cast<double>(counts[i][j]) / static_cast<double>(n);
        }
    }
    return {std::move(pairs), std::move(counts),
            JointDistribution(o1, o2, std::move(freq)), disagreements};
}

} // namespace qmeasure
