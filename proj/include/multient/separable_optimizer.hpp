// Copyright 2026 The multient Authors

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
 * @file separable_optimizer.hpp
 * Relative-entropy minimization over mixtures of product pure states.
 *
 * The ansatz is sigma = (1 - eps) sum_k p_k |Phi_k><Phi_k| + eps I / D with
 * Phi_k a product of unit vectors, one per block. Every such sigma is
 * separable across the blocks, so any objective value reached is an upper
 * bound on the true minimum. Weights (as softmax logits) and unnormalized
 * block vectors are optimized jointly by L-BFGS with an analytic gradient,
 * from several starting points.
 */
#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "multient/measures.hpp"

namespace multient {

/// Mixing weight of the maximally mixed state in every ansatz.
inline constexpr double kAnsatzMixing = 1e-10;

struct SeparableFit {
    double nats = 0.0;
    bool converged = false;
    int iterations = 0;
    /// A sigma eigenvalue had to be floored at 1e-12.
    bool floored = false;
};

/// Minimizes S(rho || sigma) over the ansatz. `dims` are the local
/// dimensions of rho's tensor positions and `blocks` partitions those
/// positions (bit i = position i). `stream` seeds the random restarts.
SeparableFit minimize_relative_entropy(const Eigen::MatrixXcd &rho, std::span<const int> dims,
                                       std::span<const PartyMask> blocks,
                                       const OptimizerBudget &budget, std::uint64_t stream,
                                       bool parallel_restarts = true);

/// Single restart, exposed for the serial/parallel equivalence tests.
SeparableFit minimize_relative_entropy_restart(const Eigen::MatrixXcd &rho, std::span<const int> dims,
                                               std::span<const PartyMask> blocks,
                                               const OptimizerBudget &budget, std::uint64_t stream,
                                               int restart);

namespace detail {

struct RelativeEntropyEval {
    double value = 0.0;
    /// Derivative of Tr(rho ln sigma) with respect to sigma, as a Hermitian
    /// matrix L with d Tr(rho ln sigma) = Tr(L d sigma).
    Eigen::MatrixXcd log_derivative;
    bool floored = false;
};

/// Tr(rho ln rho) - Tr(rho ln sigma), eigenvalues of sigma floored at 1e-12.
RelativeEntropyEval relative_entropy(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma,
                                     bool with_derivative);

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

} // namespace detail

} // namespace multient
