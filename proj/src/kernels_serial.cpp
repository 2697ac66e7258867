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

namespace multient::kernels {

IndexSplit split_index(std::span<const int> dims, PartyMask keep) {
    const std::size_t n = dims.size();
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t i = n; i-- > 1;) {
        stride[i - 1] = stride[i] * static_cast<std::size_t>(dims[i]);
    }
    auto offsets = [&](bool kept) {
        std::vector<std::size_t> out{0};
        for (std::size_t i = 0; i < n; ++i) {
            const bool is_kept = (keep >> i) & 1u;
            if (is_kept != kept) continue;
            std::vector<std::size_t> next;
            next.reserve(out.size() * static_cast<std::size_t>(dims[i]));
            for (std::size_t base : out) {
                for (int d = 0; d < dims[i]; ++d) {
                    next.push_back(base + static_cast<std::size_t>(d) * stride[i]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    return {offsets(true), offsets(false)};
}

namespace serial {

Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split) {
    const auto dk = static_cast<Eigen::Index>(split.kept.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a) {
        for (Eigen::Index b = a; b < dk; ++b) {
            std::complex<double> acc = 0.0;
            for (std::size_t t : split.traced) {
                acc += psi[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(a)] + t)] *
                       std::conj(psi[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(b)] + t)]);
            }
            rho(a, b) = acc;
            rho(b, a) = std::conj(acc);
        }
    }
    return rho;
}

Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split) {
    const auto dk = static_cast<Eigen::Index>(split.kept.size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a) {
        for (Eigen::Index b = 0; b < dk; ++b) {
            std::complex<double> acc = 0.0;
            for (std::size_t t : split.traced) {
                acc += rho(static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(a)] + t),
                           static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(b)] + t));
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
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
    for (std::size_t t : split.traced) {
        for (Eigen::Index a = 0; a < dk; ++a) {
            std::complex<double> acc = 0.0;
            for (Eigen::Index b = 0; b < dk; ++b) {
                acc += op(a, b) * psi[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(b)] + t)];
            }
            out[static_cast<Eigen::Index>(split.kept[static_cast<std::size_t>(a)] + t)] = acc;
        }
    }
    return out;
}

} // namespace serial

Eigen::MatrixXcd reduce_pure(const Eigen::VectorXcd &psi, const IndexSplit &split) {
    const std::size_t work = split.kept.size() * split.kept.size() * split.traced.size();
    return work >= kParallelWorkThreshold ? parallel::reduce_pure(psi, split)
                                          : serial::reduce_pure(psi, split);
}

Eigen::MatrixXcd reduce_mixed(const Eigen::MatrixXcd &rho, const IndexSplit &split) {
    const std::size_t work = split.kept.size() * split.kept.size() * split.traced.size();
    return work >= kParallelWorkThreshold ? parallel::reduce_mixed(rho, split)
                                          : serial::reduce_mixed(rho, split);
}

Eigen::VectorXcd apply_local(const Eigen::VectorXcd &psi, const IndexSplit &split,
                             const Eigen::MatrixXcd &op) {
    const std::size_t work = split.kept.size() * split.kept.size() * split.traced.size();
    return work >= kParallelWorkThreshold ? parallel::apply_local(psi, split, op)
                                          : serial::apply_local(psi, split, op);
}

} // namespace multient::kernels
