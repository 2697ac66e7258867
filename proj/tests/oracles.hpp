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
 * @file oracles.hpp
 * Independent reference computations for the tests. Everything here is
 * written from first principles with explicit index arithmetic and must not
 * call the library routine it checks.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

/// Digits of a flat index, most significant party first.
inline std::vector<int> digits(std::size_t index, const std::vector<int> &dims) {
    std::vector<int> d(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        d[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
        index /= static_cast<std::size_t>(dims[k]);
    }
    return d;
}

/// Partial trace keeping the 0-based positions in `keep` (ascending).
inline Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd &rho, const std::vector<int> &dims,
                                      const std::vector<int> &keep) {
    std::vector<int> kept_dims;
    for (int k : keep) kept_dims.push_back(dims[static_cast<std::size_t>(k)]);
    std::size_t dk = 1;
    for (int d : kept_dims) dk *= static_cast<std::size_t>(d);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const auto n = static_cast<std::size_t>(rho.rows());
    auto in_keep = [&](std::size_t pos) {
        for (int k : keep) {
            if (static_cast<std::size_t>(k) == pos) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto di = digits(i, dims);
        for (std::size_t j = 0; j < n; ++j) {
            const auto dj = digits(j, dims);
            bool traced_equal = true;
            for (std::size_t p = 0; p < dims.size(); ++p) {
                if (!in_keep(p) && di[p] != dj[p]) traced_equal = false;
            }
            if (!traced_equal) continue;
            std::size_t a = 0, b = 0;
            for (int k : keep) {
                a = a * static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]) +
                    static_cast<std::size_t>(di[static_cast<std::size_t>(k)]);
                b = b * static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]) +
                    static_cast<std::size_t>(dj[static_cast<std::size_t>(k)]);
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

inline double shannon(const std::vector<double> &p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0) h -= x * std::log(x);
    }
    return h;
}

/// Entanglement entropy (nats) of a two-qubit pure state a|00>+b|01>+c|10>+d|11>
/// from the closed-form eigenvalues of its 2x2 reduced state.
inline double two_qubit_entropy(const Eigen::VectorXcd &psi) {
    const double det = std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det * det));
    return shannon({(1.0 + disc) / 2.0, (1.0 - disc) / 2.0});
}

/// Entropy from eigenvalues computed by Eigen's Hermitian solver directly.
inline double entropy(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    std::vector<double> p(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    for (auto &x : p) x = x < 1e-14 ? 0.0 : x;
    return shannon(p);
}

} // namespace oracle
