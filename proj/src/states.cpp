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
#include "multient/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "multient/kernels.hpp"

namespace multient {

namespace {

std::vector<std::size_t> strides(const std::vector<int> &dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * static_cast<std::size_t>(dims[i]);
    return s;
}

void require_parties_in_shape(const GeneralizedParty &gp, const SystemShape &shape, const char *what) {
    if (!gp.subset_of(shape.all_parties())) {
        throw std::invalid_argument(std::string(what) + ": parties outside the system");
    }
}

} // namespace

SystemShape::SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("system needs at least one party");
    }
    if (dims_.size() > static_cast<std::size_t>(kMaxPartyIndex)) {
        throw std::invalid_argument("too many parties");
    }
    for (int d : dims_) {
        if (d < 2) throw std::invalid_argument("local dimensions must be at least 2");
        if (dimension_ * static_cast<std::size_t>(d) > kMaxDimension) {
            throw std::invalid_argument("total dimension exceeds " + std::to_string(kMaxDimension));
        }
        dimension_ *= static_cast<std::size_t>(d);
    }
}

SystemShape SystemShape::qubits(int n) { return SystemShape(std::vector<int>(static_cast<std::size_t>(n), 2)); }

std::size_t SystemShape::dimension(const GeneralizedParty &gp) const {
    std::size_t d = 1;
    for (int p : gp.parties()) d *= static_cast<std::size_t>(dim(p));
    return d;
}

SystemShape SystemShape::restricted_to(const GeneralizedParty &gp) const {
    require_parties_in_shape(gp, *this, "restricted_to");
    std::vector<int> out;
    for (int p : gp.parties()) out.push_back(dim(p));
    return SystemShape(std::move(out));
}

PureState::PureState(SystemShape shape, Eigen::VectorXcd amplitudes)
    : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != shape_.dimension()) {
        throw InvalidState("amplitude count " + std::to_string(amplitudes_.size()) +
                           " does not match dimension " + std::to_string(shape_.dimension()));
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
        throw InvalidState("state is not normalized (norm " + std::to_string(amplitudes_.norm()) + ")");
    }
}

PureState PureState::normalized(SystemShape shape, Eigen::VectorXcd amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidState("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= n;
    return PureState(std::move(shape), std::move(amplitudes));
}

PureState PureState::zero(SystemShape shape) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dimension()));
    v[0] = 1.0;
    return PureState(std::move(shape), std::move(v));
}

DensityMatrix::DensityMatrix(SystemShape shape, Eigen::MatrixXcd matrix, Unchecked)
    : shape_(std::move(shape)), matrix_(std::move(matrix)) {}

DensityMatrix::DensityMatrix(SystemShape shape, Eigen::MatrixXcd matrix)
    : shape_(std::move(shape)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(shape_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw InvalidState("density matrix size does not match the system dimension");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw InvalidState("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > kNormTolerance) {
        throw InvalidState("density matrix trace is not 1");
    }
    spectrum(matrix_); // PSD check
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.shape(), psi.amplitudes() * psi.amplitudes().adjoint(), Unchecked{});
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

PureState make_ghz(const GeneralizedParty &subset, const SystemShape &shape) {
    if (subset.size() < 2) {
        throw std::invalid_argument("a GHZ-like state needs at least two parties");
    }
    require_parties_in_shape(subset, shape, "make_ghz");
    const auto s = strides(shape.dims());
    std::size_t ones = 0;
    for (int p : subset.parties()) {
        if (shape.dim(p) != 2) {
            throw std::invalid_argument("GHZ parties must be qubits");
        }
        ones += s[static_cast<std::size_t>(p - 1)];
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dimension()));
    v[0] = M_SQRT1_2;
    v[static_cast<Eigen::Index>(ones)] = M_SQRT1_2;
    return PureState(shape, std::move(v));
}

PureState make_schmidt_state(std::span<const Complex> coefficients, const SystemShape &shape) {
    const int min_dim = *std::min_element(shape.dims().begin(), shape.dims().end());
    if (coefficients.empty() || static_cast<int>(coefficients.size()) > min_dim) {
        throw std::invalid_argument("Schmidt terms must number between 1 and the smallest local dimension");
    }
    double norm2 = 0.0;
    for (const auto &a : coefficients) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        throw std::invalid_argument("Schmidt coefficients are not normalized");
    }
    const auto s = strides(shape.dims());
    const std::size_t diag = std::accumulate(s.begin(), s.end(), std::size_t{0});
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dimension()));
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        v[static_cast<Eigen::Index>(k * diag)] = coefficients[k];
    }
    return PureState(shape, std::move(v));
}

PureState make_schmidt_state(std::span<const double> coefficients, const SystemShape &shape) {
    std::vector<Complex> c(coefficients.begin(), coefficients.end());
    return make_schmidt_state(std::span<const Complex>(c), shape);
}

PureState tensor(const PureState &a, const PureState &b) {
    std::vector<int> dims = a.shape().dims();
    dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
    SystemShape shape(std::move(dims));
    const auto db = b.amplitudes().size();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(shape.dimension()));
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
    }
    return PureState(std::move(shape), std::move(v));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<int> dims = a.shape().dims();
    dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
    SystemShape shape(std::move(dims));
    const auto da = a.matrix().rows();
    const auto db = b.matrix().rows();
    Eigen::MatrixXcd m(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    return DensityMatrix(std::move(shape), std::move(m), DensityMatrix::Unchecked{});
}

PureState permute_parties(const PureState &psi, std::span<const int> order) {
    const int n = psi.num_parties();
    if (static_cast<int>(order.size()) != n) {
        throw std::invalid_argument("permutation length does not match the party count");
    }
    std::vector<int> check(order.begin(), order.end());
    std::sort(check.begin(), check.end());
    for (int i = 0; i < n; ++i) {
        if (check[static_cast<std::size_t>(i)] != i + 1) throw std::invalid_argument("not a permutation");
    }
    const auto &old_dims = psi.shape().dims();
    std::vector<int> new_dims;
    for (int p : order) new_dims.push_back(old_dims[static_cast<std::size_t>(p - 1)]);
    SystemShape shape(new_dims);
    const auto old_s = strides(old_dims);
    const auto new_s = strides(new_dims);
    Eigen::VectorXcd out(psi.amplitudes().size());
    for (std::size_t idx = 0; idx < psi.shape().dimension(); ++idx) {
        std::size_t target = 0;
        for (int i = 0; i < n; ++i) {
            const auto old_pos = static_cast<std::size_t>(order[static_cast<std::size_t>(i)] - 1);
            const std::size_t digit = (idx / old_s[old_pos]) % static_cast<std::size_t>(old_dims[old_pos]);
            target += digit * new_s[static_cast<std::size_t>(i)];
        }
        out[static_cast<Eigen::Index>(target)] = psi.amplitudes()[static_cast<Eigen::Index>(idx)];
    }
    return PureState(std::move(shape), std::move(out));
}

PureState tensor_aligned(const PureState &a, const PureState &b) {
    const int n = a.num_parties();
    if (b.num_parties() != n) {
        throw std::invalid_argument("aligned tensor needs the same party count on both sides");
    }
    // Plain tensor puts b's parties after a's; interleave a_i, b_i and merge.
    const PureState joint = tensor(a, b);
    std::vector<int> order;
    for (int i = 1; i <= n; ++i) {
        order.push_back(i);
        order.push_back(n + i);
    }
    const PureState interleaved = permute_parties(joint, order);
    std::vector<int> merged;
    for (int i = 0; i < n; ++i) {
        merged.push_back(a.shape().dims()[static_cast<std::size_t>(i)] *
                         b.shape().dims()[static_cast<std::size_t>(i)]);
    }
    return PureState(SystemShape(std::move(merged)), interleaved.amplitudes());
}

PureState tensor_copies_aligned(const PureState &psi, int copies) {
    if (copies < 1) {
        throw std::invalid_argument("copies must be at least 1");
    }
    PureState out = psi;
    for (int c = 1; c < copies; ++c) out = tensor_aligned(out, psi);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, const GeneralizedParty &keep) {
    require_parties_in_shape(keep, rho.shape(), "partial_trace");
    const auto split = kernels::split_index(rho.shape().dims(), keep.mask());
    return DensityMatrix(rho.shape().restricted_to(keep), kernels::reduce_mixed(rho.matrix(), split),
                         DensityMatrix::Unchecked{});
}

DensityMatrix partial_trace(const PureState &psi, const GeneralizedParty &keep) {
    require_parties_in_shape(keep, psi.shape(), "partial_trace");
    const auto split = kernels::split_index(psi.shape().dims(), keep.mask());
    return DensityMatrix(psi.shape().restricted_to(keep), kernels::reduce_pure(psi.amplitudes(), split),
                         DensityMatrix::Unchecked{});
}

Eigen::VectorXd spectrum(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvalidState("eigendecomposition failed");
    }
    Eigen::VectorXd ev = solver.eigenvalues();
    if (ev.size() > 0 && ev[0] < -kPsdTolerance) {
        throw InvalidState("matrix is not positive semidefinite (eigenvalue " + std::to_string(ev[0]) + ")");
    }
    return ev.cwiseMax(0.0).cwiseMin(1.0);
}

double von_neumann_entropy(const Eigen::MatrixXcd &rho) {
    double s = 0.0;
    for (double lambda : spectrum(rho)) {
        if (lambda >= kEigenvalueCutoff) s -= lambda * std::log(lambda);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix &rho) { return von_neumann_entropy(rho.matrix()); }

bool is_diagonal_in_product_basis(const Eigen::MatrixXcd &rho, double tol) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        for (Eigen::Index i = 0; i < rho.rows(); ++i) {
            if (i != j && std::abs(rho(i, j)) > tol) return false;
        }
    }
    return true;
}

Eigen::VectorXcd apply_local_operator(const PureState &psi, const GeneralizedParty &gp,
                                      const Eigen::MatrixXcd &op) {
    require_parties_in_shape(gp, psi.shape(), "apply_local_operator");
    const auto split = kernels::split_index(psi.shape().dims(), gp.mask());
    return kernels::apply_local(psi.amplitudes(), split, op);
}

namespace {

void validate_channel(const ProductKrausChannel &channel, const SystemShape &shape) {
    PartyMask seen = 0;
    for (const auto &b : channel.blocks) {
        if (seen & b.mask()) throw std::invalid_argument("channel blocks overlap");
        seen |= b.mask();
    }
    if (seen != shape.all_parties().mask()) {
        throw std::invalid_argument("channel blocks must partition all parties");
    }
    if (channel.outcomes.empty()) {
        throw std::invalid_argument("channel has no outcomes");
    }
    for (const auto &ops : channel.outcomes) {
        if (ops.size() != channel.blocks.size()) {
            throw std::invalid_argument("each outcome needs one operator per block");
        }
        for (std::size_t q = 0; q < ops.size(); ++q) {
            const auto d = static_cast<Eigen::Index>(shape.dimension(channel.blocks[q]));
            if (ops[q].rows() != d || ops[q].cols() != d) {
                throw std::invalid_argument("operator dimension does not match its block");
            }
        }
    }
}

Eigen::VectorXcd apply_outcome(const Eigen::VectorXcd &v, const SystemShape &shape,
                               const std::vector<GeneralizedParty> &blocks,
                               const std::vector<Eigen::MatrixXcd> &ops, bool adjoint) {
    Eigen::VectorXcd out = v;
    for (std::size_t q = 0; q < blocks.size(); ++q) {
        const auto split = kernels::split_index(shape.dims(), blocks[q].mask());
        out = adjoint ? kernels::apply_local(out, split, ops[q].adjoint())
                      : kernels::apply_local(out, split, ops[q]);
    }
    return out;
}

} // namespace

double channel_completeness(const ProductKrausChannel &channel, const SystemShape &shape) {
    validate_channel(channel, shape);
    const auto d = static_cast<Eigen::Index>(shape.dimension());
    auto apply_sum = [&](const Eigen::VectorXcd &v) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(d);
        for (const auto &ops : channel.outcomes) {
            acc += apply_outcome(apply_outcome(v, shape, channel.blocks, ops, false), shape,
                                 channel.blocks, ops, true);
        }
        return acc;
    };
    if (d <= 1024) {
        Eigen::MatrixXcd total(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            total.col(j) = apply_sum(Eigen::VectorXcd::Unit(d, j));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(total, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()[d - 1];
    }
    // Power iteration for larger systems; the operator is PSD.
    std::mt19937_64 rng(0x5eed);
    Eigen::VectorXcd v = haar_random_state(shape, rng).amplitudes();
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXcd w = apply_sum(v);
        const double next = v.dot(w).real();
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        if (std::abs(next - lambda) < 1e-13) return next;
        lambda = next;
    }
    return lambda;
}

std::vector<Outcome> apply_selective_measurement(const PureState &psi,
                                                 const ProductKrausChannel &channel) {
    const double completeness = channel_completeness(channel, psi.shape());
    if (completeness > 1.0 + 1e-9) {
        throw std::invalid_argument("channel violates completeness (largest eigenvalue " +
                                    std::to_string(completeness) + ")");
    }
    std::vector<Outcome> out;
    for (const auto &ops : channel.outcomes) {
        Eigen::VectorXcd phi = apply_outcome(psi.amplitudes(), psi.shape(), channel.blocks, ops, false);
        const double p = phi.squaredNorm();
        if (p < 1e-12) continue;
        out.push_back({p, PureState(psi.shape(), phi / std::sqrt(p))});
    }
    return out;
}

PureState haar_random_state(const SystemShape &shape, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(shape.dimension()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    return PureState::normalized(shape, std::move(v));
}

Eigen::MatrixXcd haar_random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0);
    }
    return q;
}

} // namespace multient
