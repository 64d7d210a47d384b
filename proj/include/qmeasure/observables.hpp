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
 * Accurate (projection-valued) and generalized (positive-operator-valued)
 * observables and their Born-rule outcome distributions.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qmeasure/linalg.hpp"

namespace qmeasure {

/// Two outcome labels closer than this are the same outcome.
inline constexpr double kLabelTol = 1e-8;
/// Negative probabilities down to -kProbabilityClamp are reported as zero.
inline constexpr double kProbabilityClamp = 1e-12;
/// Allowed deviation of a distribution's total mass from one.
inline constexpr double kDistributionSumTol = 1e-10;

/// Index of the label within kLabelTol of @p x, if any.
std::optional<std::size_t> find_label(const std::vector<double> &labels,
                                      double x, double tol = kLabelTol);

/**
 * @brief Projection-valued measure: accurate observable.
 *
 * Outcomes are stored in strictly increasing order. Projectors are
 * Hermitian, idempotent, mutually orthogonal and resolve the identity,
 * all within kOperatorTol.
 */
class Pvm {
  public:
    /// Sorts by outcome and validates; throws InvariantError/DimensionError.
    Pvm(std::vector<double> outcomes, std::vector<ComplexMatrix> projectors);

    [[nodiscard]] const std::vector<double> &outcomes() const noexcept {
        return outcomes_;
    }
    [[nodiscard]] const std::vector<ComplexMatrix> &projectors() const noexcept {
        return projectors_;
    }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }
    [[nodiscard]] std::optional<std::size_t> find(double x) const {
        return find_label(outcomes_, x);
    }

  private:
    std::vector<double> outcomes_;
    std::vector<ComplexMatrix> projectors_;
    std::size_t dim_;
};

/**
 * @brief Positive-operator-valued measure: generalized observable.
 *
 * Each effect satisfies 0 <= E <= I (eigenvalues in [-1e-9, 1 + 1e-9]) and
 * the effects sum to the identity. Outcome order is preserved as given.
 */
class Povm {
  public:
    Povm(std::vector<double> outcomes, std::vector<ComplexMatrix> effects);

    [[nodiscard]] const std::vector<double> &outcomes() const noexcept {
        return outcomes_;
    }
    [[nodiscard]] const std::vector<ComplexMatrix> &effects() const noexcept {
        return effects_;
    }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }
    [[nodiscard]] std::optional<std::size_t> find(double x) const {
        return find_label(outcomes_, x);
    }

  private:
    std::vector<double> outcomes_;
    std::vector<ComplexMatrix> effects_;
    std::size_t dim_;
};

/// Outcome labels with their probabilities; total mass is one.
class OutcomeDistribution {
  public:
    /**
     * Clamps entries in [-kProbabilityClamp, 0) to zero. Throws
     * InvariantError on anything more negative or when the total mass
     * differs from one by more than kDistributionSumTol.
     */
    OutcomeDistribution(std::vector<double> outcomes,
                        std::vector<double> probabilities);

    [[nodiscard]] const std::vector<double> &outcomes() const noexcept {
        return outcomes_;
    }
    [[nodiscard]] const std::vector<double> &probabilities() const noexcept {
        return probs_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }
    /// Probability of the outcome labelled @p x, zero if absent.
    [[nodiscard]] double probability(double x) const;

  private:
    std::vector<double> outcomes_;
    std::vector<double> probs_;
};

/// Projection-valued measure of a Hermitian operator A = sum_x x E_A(x).
Pvm pvm_from_observable(const ComplexMatrix &a,
                        double cluster_tol = kClusterTol);

/// P(x) = <psi|E_A(x)|psi>
OutcomeDistribution born_pvm(const Pvm &pvm, const StateVector &psi);
/// P(x) = <psi|Pi(x)|psi>
OutcomeDistribution born_povm(const Povm &povm, const StateVector &psi);

/// A PVM viewed as a POVM whose effects are its projectors.
Povm as_povm(const Pvm &pvm);

/// True iff every effect is a projector and effects are pairwise orthogonal.
bool is_projective(const Povm &povm, double tol = kOperatorTol);

/// Projective POVM viewed as a PVM. InvariantError if it is not projective.
Pvm as_pvm(const Povm &povm, double tol = kOperatorTol);

/// Pi(+1) = (I + eta sigma_z)/2, Pi(-1) = (I - eta sigma_z)/2.
Povm unsharp_qubit_povm(double eta);

/// Qubit trine: effects (2/3)|phi_k><phi_k| with Bloch vectors 120 degrees
/// apart in the x-z plane, outcomes 0, 1, 2.
Povm trine_povm();

} // namespace qmeasure
