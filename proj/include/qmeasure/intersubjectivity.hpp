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
 * Two observers measuring the same system with their own apparatus.
 *
 * The compound space is H (x) K1 (x) K2, with H the slowest index. Each
 * interaction U_j is lifted to the compound space acting as identity on the
 * other apparatus. Each meter is evolved in the Heisenberg picture by its
 * own lifted interaction over the common measurement period:
 *
 *   E1(x) = U1~^dagger (I (x) E_M1(x) (x) I) U1~
 *   E2(y) = U2~^dagger (I (x) I (x) E_M2(y)) U2~
 *
 * The two measurements are local (jointly performable) when every E1(x)
 * commutes with every E2(y) on the prepared states, i.e.
 * [E1(x), E2(y)] W = 0 with W = I (x) |xi1> (x) |xi2>; only then is the
 * joint table P(x, y) = <psi xi1 xi2| E1(x) E2(y) |psi xi1 xi2> read as a
 * probability distribution. The restriction makes the check independent of
 * how each interaction acts outside the prepared apparatus states.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qmeasure/linalg.hpp"
#include "qmeasure/measurement.hpp"
#include "qmeasure/observables.hpp"

namespace qmeasure {

/// Default tolerance on max-entry commutator norms.
inline constexpr double kCommutationTol = 1e-8;

struct ComposeOptions {
    double commutation_tol = kCommutationTol;
    std::size_t max_compound_dim = kMaxCompoundDim;
};

/// Order in which the two lifted interactions are multiplied.
enum class CompositionOrder {
    kSecondAfterFirst, ///< U2~ U1~
    kFirstAfterSecond, ///< U1~ U2~
};

class JointScenario {
  public:
    JointScenario(StateVector psi, MeasurementProcess process1,
                  MeasurementProcess process2, ComposeOptions options = {});

    [[nodiscard]] const StateVector &psi() const noexcept { return psi_; }
    [[nodiscard]] const MeasurementProcess &process1() const noexcept {
        return process1_;
    }
    [[nodiscard]] const MeasurementProcess &process2() const noexcept {
        return process2_;
    }
    [[nodiscard]] const ComplexMatrix &lifted1() const noexcept { return lifted1_; }
    [[nodiscard]] const ComplexMatrix &lifted2() const noexcept { return lifted2_; }
    /// U2~ U1~
    [[nodiscard]] const ComplexMatrix &composed_unitary() const noexcept {
        return composed_;
    }
    [[nodiscard]] const EvolvedMeter &evolved1() const noexcept { return evolved1_; }
    [[nodiscard]] const EvolvedMeter &evolved2() const noexcept { return evolved2_; }
    /// psi (x) xi1 (x) xi2
    [[nodiscard]] const StateVector &initial_state() const noexcept {
        return initial_;
    }
    /// max over (x, y) of ||[E1(x), E2(y)] W||_max
    [[nodiscard]] double max_commutator() const noexcept { return max_commutator_; }
    [[nodiscard]] double commutation_tol() const noexcept { return commutation_tol_; }
    [[nodiscard]] bool is_local() const noexcept {
        return max_commutator_ <= commutation_tol_;
    }

  private:
    StateVector psi_;
    MeasurementProcess process1_;
    MeasurementProcess process2_;
    ComplexMatrix lifted1_;
    ComplexMatrix lifted2_;
    ComplexMatrix composed_;
    EvolvedMeter evolved1_;
    EvolvedMeter evolved2_;
    StateVector initial_;
    double max_commutator_;
    double commutation_tol_;
};

/// Build the two-observer scenario. DimensionError when the processes or
/// the state disagree on dim(H).
JointScenario compose(const StateVector &psi, const MeasurementProcess &p1,
                      const MeasurementProcess &p2, ComposeOptions options = {});

struct CommutationCheck {
    bool commute = false;
    double max_commutator_norm = 0.0;
};

CommutationCheck check_commutation(const JointScenario &s, double tol);

/// Joint outcome table P(x, y); rows follow outcomes1, columns outcomes2.
class JointDistribution {
  public:
    /// Clamps entries in [-1e-12, 0) to zero; InvariantError on larger
    /// negativity or when the total mass is not one within 1e-10.
    JointDistribution(std::vector<double> outcomes1, std::vector<double> outcomes2,
                      std::vector<std::vector<double>> probabilities);

    [[nodiscard]] const std::vector<double> &outcomes1() const noexcept {
        return outcomes1_;
    }
    [[nodiscard]] const std::vector<double> &outcomes2() const noexcept {
        return outcomes2_;
    }
    [[nodiscard]] const std::vector<std::vector<double>> &
    probabilities() const noexcept {
        return probs_;
    }
    /// P(x, y) by label; zero for unknown labels.
    [[nodiscard]] double probability(double x, double y) const;
    [[nodiscard]] OutcomeDistribution marginal1() const;
    [[nodiscard]] OutcomeDistribution marginal2() const;
    /// Sum of P(x, y) over cells whose labels agree within kLabelTol.
    [[nodiscard]] double agreement() const;

  private:
    std::vector<double> outcomes1_;
    std::vector<double> outcomes2_;
    std::vector<std::vector<double>> probs_;
};

/// NonCommutingMetersError unless the scenario is local.
JointDistribution joint_distribution(const JointScenario &s);

/**
 * @brief Joint table of reading both pointers after the full composed
 * evolution, P(x, y) = ||(I (x) E_M1(x) (x) E_M2(y)) U psi xi1 xi2||^2.
 *
 * Always a distribution. When the lifted interactions commute it agrees
 * with joint_distribution() in either order.
 */
JointDistribution sequential_distribution(const JointScenario &s,
                                          CompositionOrder order);

struct OitReport {
    double off_diagonal_mass = 0.0;
    /// (x, P(x, x)) for each outcome of the observable.
    std::vector<std::pair<double, double>> diagonal;
    /// (x, ||E_A(x) psi||^2)
    std::vector<std::pair<double, double>> expected_diagonal;
    double max_diagonal_deviation = 0.0;
    bool intersubjective = false;
    double tolerance = kReproducibilityTol;
};

/**
 * @brief Check that both observers record the same value of @p a.
 *
 * Requires both processes to reproduce @p a within @p tol (PreconditionError
 * otherwise) and the scenario to be local (NonCommutingMetersError).
 */
OitReport verify_oit(const JointScenario &s, const Pvm &a,
                     double tol = kReproducibilityTol);

/// Probability that the two observers record the same label.
double agreement_probability(const JointScenario &s);

struct SampleResult {
    std::vector<std::pair<double, double>> pairs;
    /// counts[i][j] for (outcomes1[i], outcomes2[j])
    std::vector<std::vector<std::size_t>> counts;
    JointDistribution empirical;
    std::size_t disagreements = 0;
};

/**
 * @brief i.i.d. draws from the joint table.
 *
 * Inverse-CDF over cells in row-major (x, y) order with a 64-bit Mersenne
 * Twister; identical seeds give identical sequences.
 */
SampleResult sample_outcomes(const JointScenario &s, std::size_t n,
                             std::uint64_t seed);

} // namespace qmeasure
