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
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "generators.hpp"
#include "multient/separable_optimizer.hpp"
#include "oracles.hpp"

using namespace multient;

namespace {

Eigen::MatrixXcd matrix_log(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXd l = es.eigenvalues();
    for (Eigen::Index i = 0; i < l.size(); ++i) l[i] = std::log(l[i]);
    return es.eigenvectors() * l.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// S(rho || sigma) for full-rank rho and sigma.
double relative_entropy_oracle(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma) {
    return (rho * (matrix_log(rho) - matrix_log(sigma))).trace().real();
}

Eigen::MatrixXcd random_hermitian(Eigen::Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    return (a + a.adjoint()) / 2.0;
}

Eigen::MatrixXcd werner(double p) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi[0] = phi[3] = M_SQRT1_2;
    return p * phi * phi.adjoint() + (1 - p) * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
}

const std::vector<int> kQubitPair{2, 2};
const std::vector<PartyMask> kSplitPair{0b01, 0b10};

} // namespace

TEST_CASE("relative entropy matches a direct matrix-log evaluation") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
        const Eigen::MatrixXcd rho = gen::random_density(4, 4, rng);
        const Eigen::MatrixXcd sigma = gen::random_density(4, 4, rng);
        const auto eval = detail::relative_entropy(rho, sigma, false);
        CHECK(eval.value == doctest::Approx(relative_entropy_oracle(rho, sigma)).epsilon(1e-9));
        CHECK(detail::relative_entropy(rho, rho, false).value == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("log derivative agrees with central finite differences") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        const Eigen::MatrixXcd rho = gen::random_density(4, 2, rng);
        const Eigen::MatrixXcd sigma = gen::random_density(4, 4, rng);
        const Eigen::MatrixXcd h = random_hermitian(4, rng);
        const auto eval = detail::relative_entropy(rho, sigma, true);
        const double t = 1e-6;
        const double fp = detail::relative_entropy(rho, sigma + t * h, false).value;
        const double fm = detail::relative_entropy(rho, sigma - t * h, false).value;
        // value = Tr rho ln rho - Tr rho ln sigma, so d value = -Tr(L dsigma).
        const double analytic = -(eval.log_derivative * h).trace().real();
        CHECK((fp - fm) / (2 * t) == doctest::Approx(analytic).epsilon(1e-5));
    }
}

TEST_CASE("rank-deficient sigma is floored and flagged") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(2, 2);
    sigma(0, 0) = 1.0;
    const auto eval = detail::relative_entropy(rho, sigma, false);
    CHECK(eval.floored);
    CHECK(std::isfinite(eval.value));
}

TEST_CASE("pure two-qubit states reach their entanglement entropy") {
    std::mt19937_64 rng(31);
    const OptimizerBudget budget;
    for (int i = 0; i < 10; ++i) {
        const PureState psi = haar_random_state(SystemShape::qubits(2), rng);
        const Eigen::MatrixXcd rho = psi.amplitudes() * psi.amplitudes().adjoint();
        const SeparableFit fit = minimize_relative_entropy(rho, kQubitPair, kSplitPair, budget, 1);
        const double gap = fit.nats - oracle::two_qubit_entropy(psi.amplitudes());
        CHECK(gap >= -1e-6);
        CHECK(gap <= 5e-3);
    }
}

TEST_CASE("Werner states match the closed-form relative entropy") {
    // For fidelity F > 1/2 the minimum is ln 2 + F ln F + (1 - F) ln(1 - F).
    const OptimizerBudget budget;
    for (double p : {0.4, 0.6, 0.9}) {
        const double f = (1 + 3 * p) / 4;
        const double expected = std::numbers::ln2 + f * std::log(f) + (1 - f) * std::log(1 - f);
        const SeparableFit fit = minimize_relative_entropy(werner(p), kQubitPair, kSplitPair, budget, 2);
        CAPTURE(p);
        CHECK(fit.nats >= expected - 1e-6);
        CHECK(fit.nats <= expected + 5e-3);
    }
    const SeparableFit sep = minimize_relative_entropy(werner(0.2), kQubitPair, kSplitPair, budget, 3);
    CHECK(sep.nats <= 1e-6);
}

TEST_CASE("singlet mixed with a product state matches the closed form") {
    // rho = l |Psi+><Psi+| + (1 - l) |00><00| has minimum
    // (l - 2) ln(1 - l/2) + (1 - l) ln(1 - l); l = 2/3 is the W-state pair marginal.
    const OptimizerBudget budget;
    for (double l : {0.3, 2.0 / 3.0, 0.9}) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
        psi[1] = psi[2] = M_SQRT1_2;
        Eigen::MatrixXcd rho = l * psi * psi.adjoint();
        rho(0, 0) += 1 - l;
        const double expected = (l - 2) * std::log(1 - l / 2) + (1 - l) * std::log(1 - l);
        const SeparableFit fit = minimize_relative_entropy(rho, kQubitPair, kSplitPair, budget, 5);
        CAPTURE(l);
        CHECK(fit.nats >= expected - 1e-6);
        CHECK(fit.nats <= expected + 5e-3);
    }
}

TEST_CASE("explicit separable mixtures give zero") {
    std::mt19937_64 rng(12);
    const OptimizerBudget budget;
    for (int i = 0; i < 5; ++i) {
        Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(4, 4);
        for (int k = 0; k < 3; ++k) {
            const Eigen::VectorXcd a = haar_random_state(SystemShape::qubits(1), rng).amplitudes();
            const Eigen::VectorXcd b = haar_random_state(SystemShape::qubits(1), rng).amplitudes();
            Eigen::VectorXcd v(4);
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) v[2 * x + y] = a[x] * b[y];
            }
            sigma += (k + 1) / 6.0 * v * v.adjoint();
        }
        CHECK(minimize_relative_entropy(sigma, kQubitPair, kSplitPair, budget, 4).nats <= 1e-6);
    }
}

TEST_CASE("restarts are deterministic and parallel matches serial") {
    std::mt19937_64 rng(40);
    const Eigen::MatrixXcd rho = gen::random_density(8, 2, rng);
    const std::vector<int> dims{2, 2, 2};
    const std::vector<PartyMask> blocks{0b001, 0b110};
    OptimizerBudget budget;
    budget.restarts = 4;
    budget.max_iters = 60;
    const SeparableFit a = minimize_relative_entropy(rho, dims, blocks, budget, 9, true);
    const SeparableFit b = minimize_relative_entropy(rho, dims, blocks, budget, 9, false);
    const SeparableFit c = minimize_relative_entropy(rho, dims, blocks, budget, 9, true);
    CHECK(a.nats == b.nats);
    CHECK(a.nats == c.nats);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < budget.restarts; ++r) {
        best = std::min(best, minimize_relative_entropy_restart(rho, dims, blocks, budget, 9, r).nats);
    }
    CHECK(a.nats == best);
}

TEST_CASE("seed mixing spreads nearby inputs") {
    CHECK(detail::mix_seed(1, 2) != detail::mix_seed(2, 1));
    CHECK(detail::mix_seed(0, 0) != detail::mix_seed(0, 1));
    CHECK(detail::mix_seed(5, 7) == detail::mix_seed(5, 7));
}
