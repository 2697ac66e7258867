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
 * @file kernels.hpp
 * Index-mapping kernels behind partial traces and local operators.
 *
 * Each kernel exists twice: `serial::` is the straightforward reference kept
 * for testing, `parallel::` distributes the outer loop with OpenMP. The
 * unqualified functions dispatch on problem size.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "multient/parties.hpp"

namespace multient::kernels {

/// Flat index = kept[a] + traced[t] for every (a, t). Both offset tables are
/// in row-major order over their parties, most significant party first.
struct IndexSplit {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
};

/// `keep` is a mask over 0-based tensor positions (bit i = position i).
IndexSplit split_index(std::span<const int> dims, PartyMask keep);

namespace serial {
Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split);
Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split);
Eigen::VectorXcd apply_local(const Eigen::VectorXcd &psi, const IndexSplit &split,
                             const Eigen::MatrixXcd &op);
} // namespace serial

namespace parallel {
Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split);
Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split);
Eigen::VectorXcd apply_local(const Eigen::VectorXcd &psi, const IndexSplit &split,
                             const Eigen::MatrixXcd &op);
} // namespace parallel

/// Work (multiply-adds) above which the dispatchers use the OpenMP kernels.
inline constexpr std::size_t kParallelWorkThreshold = std::size_t{1} << 16;

Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split);
Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split);
Eigen::VectorXcd apply_local(const Eigen::VectorXcd &psi, const IndexSplit &split,
                             const Eigen::MatrixXcd &op);

} // namespace multient::kernels
