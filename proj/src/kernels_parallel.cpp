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
#include "multient/kernels.hpp"

#include <stdexcept>

#include <omp.h>

namespace multient::kernels::parallel {

Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split) {
    const auto dk = static_cast<std::ptrdiff_t>(split.kept.size());
    const auto dt = static_cast<std::ptrdiff_t>(split.traced.size());
    // Gather into a dk x dt matrix first so the inner loop is contiguous.
    Eigen::MatrixXcd m(dk, dt);
#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t a = 0; a < dk; ++a) {
        for (std::ptrdiff_t t = 0; t < dt; ++t) {
            m(a, t) = psi[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(a)] +
                                                    split.traced[static_cast<std::size_t>(t)])];
        }
    }
    Eigen::MatrixXcd rho(dk, dk);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t a = 0; a < dk; ++a) {
        for (std::ptrdiff_t b = a; b < dk; ++b) {
            std::complex<double> acc = 0.0;
            for (std::ptrdiff_t t = 0; t < dt; ++t) {
                acc += m(a, t) * std::conj(m(b, t));
            }
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
    }
    return rho;
}

Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split) {
    const auto dk = static_cast<std::ptrdiff_t>(split.kept.size());
    Eigen::MatrixXcd out(dk, dk);
#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t a = 0; a < dk; ++a) {
        for (std::ptrdiff_t b = 0; b < dk; ++b) {
            std::complex<double> acc = 0.0;
            const std::size_t ka = split.kept[static_cast<std::size_t>(a)];
            const std::size_t kb = split.kept[static_cast<std::size_t>(b)];
            for (std::size_t t : split.traced) {
                acc += rho(static_cast<Eigen::Index>(ka + t), static_cast<Eigen::Index>(kb + t));
            }
            out(a, b) = acc;
        }
    }
    return out;
}

Eigen::VectorXcd apply_local(const Eigen::VectorXcd &psi, const IndexSplit &split,
                             const Eigen::MatrixXcd &op) {
    const auto dk = static_cast<Eigen::Index>(split.kept.size());
    if (op.rows() != dk || op.cols() != dk) {
        throw std::invalid_argument("local operator dimension does not match its parties");
    }
    const auto dt = static_cast<std::ptrdiff_t>(split.traced.size());
    Eigen::VectorXcd out(psi.size());
#pragma omp parallel
    {
        Eigen::VectorXcd local(dk);
#pragma omp for schedule(static)
        for (std::ptrdiff_t t = 0; t < dt; ++t) {
            const std::size_t off = split.traced[static_cast<std::size_t>(t)];
            for (Eigen::Index b = 0; b < dk; ++b) {
                local[b] = psi[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(b)] + off)];
            }
            for (Eigen::Index a = 0; a < dk; ++a) {
                std::complex<double> acc = 0.0;
                for (Eigen::Index b = 0; b < dk; ++b) acc += op(a, b) * local[b];
                out[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(a)] + off)] = acc;
            }
        }
    }
    return out;
}

} // namespace multient::kernels::parallel
