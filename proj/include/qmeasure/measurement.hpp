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
 * Indirect measurement models. A measuring process couples the system
 * (space H) to an apparatus (space K) prepared in |xi>, lets the pair evolve
 * under one interaction unitary U, and reads the pointer with a meter PVM M
 * on K. Time is absorbed into U: U is the evolution over the full duration
 * of the experiment.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qmeasure/linalg.hpp"
#include "qmeasure/observables.hpp"

namespace qmeasure {

/// Default upper bound on the dimension of any compound space.
inline constexpr std::size_t kMaxCompoundDim = 128;
/// Default tolerance for the probability reproducibility check.
inline constexpr double kReproducibilityTol = 1e-9;

/**
 * @brief Measuring process (K, |xi>, U, M).
 *
 * Invariants: U is unitary on H (x) K within kOperatorTol, the meter acts on
 * K, and dim(H) * dim(K) does not exceed the compound-dimension cap.
 */
class MeasurementProcess {
  public:
    MeasurementProcess(std::size_t system_dim, StateVector apparatus_state,
                       ComplexMatrix interaction, Pvm meter,
                       std::size_t max_compound_dim = kMaxCompoundDim);

    [[nodiscard]] std::size_t system_dim() const noexcept { return system_dim_; }
    [[nodiscard]] std::size_t apparatus_dim() const noexcept {
        return apparatus_state_.dim();
    }
    [[nodiscard]] const StateVector &apparatus_state() const noexcept {
        return apparatus_state_;
    }
    [[nodiscard]] const ComplexMatrix &interaction() const noexcept {
        return interaction_;
    }
    [[nodiscard]] const Pvm &meter() const noexcept { return meter_; }

  private:
    std::size_t system_dim_;
    StateVector apparatus_state_;
    ComplexMatrix interaction_;
    Pvm meter_;
};

/// Meter observable in the Heisenberg picture after the interaction: a PVM
/// on H (x) K with projectors U^dagger (I_H (x) E_M(x)) U.
using EvolvedMeter = Pvm;

EvolvedMeter evolve_meter(const MeasurementProcess &p);

/// P(x) = <psi xi| E_{M(T)}(x) |psi xi>
OutcomeDistribution meter_distribution(const MeasurementProcess &p,
                                       const StateVector &psi);

/// Pi(x) = (I_H (x) <xi|) E_{M(T)}(x) (I_H (x) |xi>)
Povm induced_povm(const MeasurementProcess &p);

struct ReproducibilityReport {
    bool reproducible = false;
    double max_operator_deviation = 0.0;
    /// (outcome label, max-entry distance between Pi(x) and E_A(x)).
    std::vector<std::pair<double, double>> per_outcome_deviation;
    double tolerance = kReproducibilityTol;
};

/**
 * @brief Compare the process's induced POVM with the PVM of an accurate
 * observable, outcome by outcome.
 *
 * Labels are matched within kLabelTol. An outcome present on one side only
 * is compared against the zero operator. The process reproduces the
 * observable's statistics for every state iff the maximal deviation is at
 * most @p tol.
 */
ReproducibilityReport check_reproducibility(const MeasurementProcess &p,
                                            const Pvm &a,
                                            double tol = kReproducibilityTol);

/// Cyclic-shift pointer model: K = C^n, xi = |0>, U = sum_j E_A(x_j) (x) S^j,
/// meter = pointer basis labelled by the outcomes of @p a.
MeasurementProcess von_neumann_model(const Pvm &a);

enum class Completion {
    /// Gram-Schmidt over the standard basis of H (x) K, in index order.
    kStandardBasis,
    /// Gram-Schmidt over seeded Gaussian random vectors.
    kRandom,
};

struct DilationOptions {
    Completion completion = Completion::kStandardBasis;
    std::uint64_t seed = 0;
};

/**
 * @brief Realize an arbitrary POVM as a measuring process.
 *
 * K = C^n for n outcomes and xi = |0>. The isometry V = sum_j sqrt(Pi_j) (x) |j>
 * fixes the columns of U indexed by |i> (x) |0>; the remaining columns are an
 * orthonormal completion. The induced POVM does not depend on which
 * completion is chosen.
 */
MeasurementProcess dilation_model(const Povm &povm, DilationOptions options = {});

/// |j><j| on C^n.
ComplexMatrix pointer_projector(std::size_t n, std::size_t j);

} // namespace qmeasure
