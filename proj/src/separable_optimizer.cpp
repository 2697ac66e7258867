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
#include "multient/separable_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <omp.h>

#include "multient/kernels.hpp"

namespace multient {

using Eigen::Index;

namespace detail {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a combined word.
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

double rho_log_rho(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda >= kEigenvalueCutoff) acc += lambda * std::log(lambda);
    }
    return acc;
}

/// -Tr(rho ln sigma) with the derivative of Tr(rho ln sigma).
RelativeEntropyEval cross_entropy(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma,
                                  bool with_derivative) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sigma);
    Eigen::VectorXd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd &v = solver.eigenvectors();
    RelativeEntropyEval out;
    for (Index i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < kEigenvalueCutoff) {
            lambda[i] = kEigenvalueCutoff;
            out.floored = true;
        }
    }
    const Eigen::MatrixXcd r = v.adjoint() * rho * v;
    double tr = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) tr += std::log(lambda[i]) * r(i, i).real();
    out.value = -tr;
    if (with_derivative) {
        const Index d = lambda.size();
        Eigen::MatrixXcd weighted(d, d);
        for (Index j = 0; j < d; ++j) {
            for (Index i = 0; i < d; ++i) {
                // Divided difference of ln at (lambda_i, lambda_j), stable near ties.
                const double delta = lambda[i] - lambda[j];
                const double x = delta / lambda[j];
                const double gamma = x == 0.0 ? 1.0 / lambda[j] : std::log1p(x) / delta;
                weighted(i, j) = gamma * r(i, j);
            }
        }
        out.log_derivative = v * weighted * v.adjoint();
    }
    return out;
}

} // namespace

RelativeEntropyEval relative_entropy(const Eigen::MatrixXcd &rho, const Eigen::MatrixXcd &sigma,
                                     bool with_derivative) {
    RelativeEntropyEval out = cross_entropy(rho, sigma, with_derivative);
    out.value += rho_log_rho(rho);
    return out;
}

} // namespace detail

namespace {

struct Layout {
    Index dimension = 1;
    std::vector<Index> block_dims;
    std::vector<PartyMask> blocks;
    /// local_index[alpha][i]: index of flat basis state i within block alpha.
    std::vector<std::vector<Index>> local_index;
};

Layout make_layout(std::span<const int> dims, std::span<const PartyMask> blocks) {
    Layout layout;
    for (int d : dims) layout.dimension *= d;
    PartyMask seen = 0;
    for (PartyMask b : blocks) {
        if (b == 0 || (seen & b)) throw std::invalid_argument("blocks must be nonempty and disjoint");
        seen |= b;
    }
    const PartyMask all = (PartyMask{1} << dims.size()) - 1;
    if (seen != all) throw std::invalid_argument("blocks must cover every tensor position");
    if (blocks.size() < 2) throw std::invalid_argument("need at least two blocks");
    for (PartyMask b : blocks) {
        const auto split = kernels::split_index(dims, b);
        layout.block_dims.push_back(static_cast<Index>(split.kept.size()));
        layout.blocks.push_back(b);
        std::vector<Index> local(static_cast<std::size_t>(layout.dimension), 0);
        for (std::size_t a = 0; a < split.kept.size(); ++a) {
            for (std::size_t t : split.traced) local[split.kept[a] + t] = static_cast<Index>(a);
        }
        layout.local_index.push_back(std::move(local));
    }
    return layout;
}

struct Ansatz {
    Eigen::VectorXd weights;
    /// vecs[k][alpha], unit vectors.
    std::vector<std::vector<Eigen::VectorXcd>> vecs;
};

struct Evaluated {
    double value = 0.0;
    bool floored = false;
    Eigen::MatrixXcd phi;    ///< D x K product vectors
    Eigen::MatrixXcd lambda; ///< derivative of Tr(rho ln sigma_eps)
};

class Problem {
  public:
    Problem(const Eigen::MatrixXcd &rho, Layout layout)
        : rho_(rho), layout_(std::move(layout)), rho_log_rho_(detail::rho_log_rho(rho)) {}

    [[nodiscard]] const Layout &layout() const { return layout_; }
    [[nodiscard]] const Eigen::MatrixXcd &rho() const { return rho_; }
    [[nodiscard]] std::size_t num_blocks() const { return layout_.block_dims.size(); }

    [[nodiscard]] Eigen::MatrixXcd products(const Ansatz &a) const {
        const Index k_count = a.weights.size();
        Eigen::MatrixXcd phi(layout_.dimension, k_count);
        for (Index k = 0; k < k_count; ++k) {
            const auto &vk = a.vecs[static_cast<std::size_t>(k)];
            for (Index i = 0; i < layout_.dimension; ++i) {
                Complex prod = 1.0;
                for (std::size_t b = 0; b < vk.size(); ++b) {
                    prod *= vk[b][layout_.local_index[b][static_cast<std::size_t>(i)]];
                }
                phi(i, k) = prod;
            }
        }
        return phi;
    }

    [[nodiscard]] Evaluated evaluate(const Ansatz &a) const {
        Evaluated e;
        e.phi = products(a);
        const Index d = layout_.dimension;
        Eigen::MatrixXcd sigma =
            (1.0 - kAnsatzMixing) * (e.phi * a.weights.cast<Complex>().asDiagonal() * e.phi.adjoint());
        sigma.diagonal().array() += kAnsatzMixing / static_cast<double>(d);
        auto ce = detail::cross_entropy(rho_, sigma, true);
        e.value = rho_log_rho_ + ce.value;
        e.floored = ce.floored;
        e.lambda = std::move(ce.log_derivative);
        return e;
    }

    /// d value / d p_k = -(1 - eps) Re <Phi_k| L |Phi_k>.
    [[nodiscard]] Eigen::VectorXd weight_scores(const Evaluated &e) const {
        const Eigen::MatrixXcd lp = e.lambda * e.phi;
        Eigen::VectorXd w(e.phi.cols());
        for (Index k = 0; k < e.phi.cols(); ++k) {
            w[k] = (1.0 - kAnsatzMixing) * e.phi.col(k).dot(lp.col(k)).real();
        }
        return w;
    }

    /// Tangent ascent directions for <Phi_k| L |Phi_k> on each unit sphere.
    [[nodiscard]] std::vector<std::vector<Eigen::VectorXcd>> tangents(const Ansatz &a, const Evaluated &e) const {
        const Index k_count = a.weights.size();
        const std::size_t nb = num_blocks();
        std::vector<std::vector<Eigen::VectorXcd>> out(static_cast<std::size_t>(k_count));
        const Eigen::MatrixXcd lp = e.lambda * e.phi;
        for (Index k = 0; k < k_count; ++k) {
            const auto &vk = a.vecs[static_cast<std::size_t>(k)];
            auto &tk = out[static_cast<std::size_t>(k)];
            tk.resize(nb);
            for (std::size_t alpha = 0; alpha < nb; ++alpha) {
                Eigen::VectorXcd g = Eigen::VectorXcd::Zero(layout_.block_dims[alpha]);
                for (Index i = 0; i < layout_.dimension; ++i) {
                    Complex others = 1.0;
                    for (std::size_t beta = 0; beta < nb; ++beta) {
                        if (beta == alpha) continue;
                        others *= vk[beta][layout_.local_index[beta][static_cast<std::size_t>(i)]];
                    }
                    g[layout_.local_index[alpha][static_cast<std::size_t>(i)]] += std::conj(others) * lp(i, k);
                }
                const Complex rayleigh = vk[alpha].dot(g);
                tk[alpha] = g - rayleigh * vk[alpha];
            }
        }
        return out;
    }

  private:
    Eigen::MatrixXcd rho_;
    Layout layout_;
    double rho_log_rho_;
};

Eigen::VectorXcd random_unit(Index d, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(d);
    for (Index i = 0; i < d; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    return v / v.norm();
}

int component_count(const OptimizerBudget &budget, Index dimension) {
    if (budget.components > 0) return budget.components;
    const Index k = std::min<Index>(dimension * dimension, 32);
    return static_cast<int>(k);
}

/// Products of per-block orthonormal bases, weighted by <Phi|rho|Phi>,
/// keeping the heaviest K and padding with random products.
Ansatz basis_seed(const Problem &problem, const std::vector<Eigen::MatrixXcd> &bases, int k_count,
                  std::mt19937_64 &rng) {
    const auto &layout = problem.layout();
    const std::size_t nb = bases.size();
    struct Candidate {
        double weight;
        std::vector<Index> choice;
    };
    std::vector<Candidate> candidates;
    std::vector<Index> choice(nb, 0);
    while (true) {
        Ansatz single;
        single.weights = Eigen::VectorXd::Ones(1);
        single.vecs.emplace_back();
        for (std::size_t b = 0; b < nb; ++b) single.vecs[0].push_back(bases[b].col(choice[b]));
        const Eigen::VectorXcd phi = problem.products(single).col(0);
        candidates.push_back({phi.dot(problem.rho() * phi).real(), choice});
        std::size_t b = 0;
        while (b < nb && ++choice[b] == layout.block_dims[b]) choice[b++] = 0;
        if (b == nb) break;
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate &x, const Candidate &y) { return x.weight > y.weight; });
    Ansatz a;
    a.weights.resize(k_count);
    for (int k = 0; k < k_count; ++k) {
        std::vector<Eigen::VectorXcd> vk;
        double w = 1e-8;
        if (static_cast<std::size_t>(k) < candidates.size()) {
            const auto &c = candidates[static_cast<std::size_t>(k)];
            for (std::size_t b = 0; b < nb; ++b) vk.push_back(bases[b].col(c.choice[b]));
            w = std::max(c.weight, 1e-8);
        } else {
            for (std::size_t b = 0; b < nb; ++b) vk.push_back(random_unit(layout.block_dims[b], rng));
        }
        a.vecs.push_back(std::move(vk));
        a.weights[k] = w;
    }
    a.weights /= a.weights.sum();
    return a;
}

Ansatz initial_ansatz(const Problem &problem, std::span<const int> dims, int restart, int k_count,
                      std::mt19937_64 &rng) {
    const auto &layout = problem.layout();
    const std::size_t nb = layout.block_dims.size();
    if (restart == 0) {
        // Eigenbases of the block marginals.
        std::vector<Eigen::MatrixXcd> bases;
        for (std::size_t b = 0; b < nb; ++b) {
            const auto split = kernels::split_index(dims, layout.blocks[b]);
            const Eigen::MatrixXcd marginal = kernels::reduce_mixed(problem.rho(), split);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(marginal);
            bases.push_back(solver.eigenvectors().rowwise().reverse());
        }
        return basis_seed(problem, bases, k_count, rng);
    }
    if (restart == 1) {
        std::vector<Eigen::MatrixXcd> bases;
        for (std::size_t b = 0; b < nb; ++b) {
            bases.push_back(Eigen::MatrixXcd::Identity(layout.block_dims[b], layout.block_dims[b]));
        }
        return basis_seed(problem, bases, k_count, rng);
    }
    Ansatz a;
    a.weights = Eigen::VectorXd::Constant(k_count, 1.0 / k_count);
    for (int k = 0; k < k_count; ++k) {
        std::vector<Eigen::VectorXcd> vk;
        for (std::size_t b = 0; b < nb; ++b) vk.push_back(random_unit(layout.block_dims[b], rng));
        a.vecs.push_back(std::move(vk));
    }
    return a;
}

/// Unconstrained coordinates of an ansatz: softmax logits for the weights,
/// then the real and imaginary parts of every (unnormalized) block vector.
class Coordinates {
  public:
    Coordinates(const Layout &layout, Index k_count) : k_count_(k_count) {
        size_ = k_count;
        for (Index d : layout.block_dims) size_ += 2 * d * k_count;
        block_dims_ = layout.block_dims;
    }

    [[nodiscard]] Index size() const { return size_; }

    [[nodiscard]] Eigen::VectorXd pack(const Ansatz &a) const {
        Eigen::VectorXd x(size_);
        for (Index k = 0; k < k_count_; ++k) x[k] = std::log(std::max(a.weights[k], 1e-300));
        Index at = k_count_;
        for (const auto &vk : a.vecs) {
            for (const auto &v : vk) {
                for (Index i = 0; i < v.size(); ++i) {
                    x[at++] = v[i].real();
                    x[at++] = v[i].imag();
                }
            }
        }
        return x;
    }

    /// Ansatz with normalized weights and unit vectors; `norms` receives the
    /// length of every block vector before normalization.
    [[nodiscard]] Ansatz unpack(const Eigen::VectorXd &x, std::vector<double> &norms) const {
        Ansatz a;
        const double top = x.head(k_count_).maxCoeff();
        a.weights = (x.head(k_count_).array() - top).exp();
        a.weights /= a.weights.sum();
        norms.clear();
        Index at = k_count_;
        for (Index k = 0; k < k_count_; ++k) {
            std::vector<Eigen::VectorXcd> vk;
            for (Index d : block_dims_) {
                Eigen::VectorXcd v(d);
                for (Index i = 0; i < d; ++i, at += 2) v[i] = Complex(x[at], x[at + 1]);
                const double n = v.norm();
                norms.push_back(n);
                vk.push_back(v / n);
            }
            a.vecs.push_back(std::move(vk));
        }
        return a;
    }

    /// Gradient of the objective in these coordinates.
    [[nodiscard]] Eigen::VectorXd gradient(const Problem &problem, const Ansatz &a, const Evaluated &e,
                                           const std::vector<double> &norms) const {
        Eigen::VectorXd g(size_);
        // d value / d p_k = -w_k; softmax chain rule.
        const Eigen::VectorXd w = problem.weight_scores(e);
        const double mean = a.weights.dot(w);
        for (Index k = 0; k < k_count_; ++k) g[k] = -a.weights[k] * (w[k] - mean);
        const auto t = problem.tangents(a, e);
        Index at = k_count_;
        std::size_t n = 0;
        for (Index k = 0; k < k_count_; ++k) {
            const double scale = -2.0 * (1.0 - kAnsatzMixing) * a.weights[k];
            for (const auto &tb : t[static_cast<std::size_t>(k)]) {
                const double inv = 1.0 / norms[n++];
                for (Index i = 0; i < tb.size(); ++i) {
                    g[at++] = scale * inv * tb[i].real();
                    g[at++] = scale * inv * tb[i].imag();
                }
            }
        }
        return g;
    }

  private:
    Index k_count_;
    Index size_ = 0;
    std::vector<Index> block_dims_;
};

SeparableFit run_restart(const Problem &problem, std::span<const int> dims, const OptimizerBudget &budget,
                         std::uint64_t stream, int restart) {
    constexpr std::size_t kMemory = 12;
    constexpr double kArmijo = 1e-4;
    std::mt19937_64 rng(detail::mix_seed(stream, static_cast<std::uint64_t>(restart)));
    const int k_count = component_count(budget, problem.layout().dimension);
    const Coordinates coords(problem.layout(), k_count);

    std::vector<double> norms;
    Eigen::VectorXd x = coords.pack(initial_ansatz(problem, dims, restart, k_count, rng));
    Ansatz ansatz = coords.unpack(x, norms);
    Evaluated current = problem.evaluate(ansatz);
    Eigen::VectorXd grad = coords.gradient(problem, ansatz, current, norms);

    std::vector<Eigen::VectorXd> s_hist, y_hist;
    std::vector<double> rho_hist;
    SeparableFit fit;
    fit.floored = current.floored;
    int stalled = 0;
    int it = 0;
    for (it = 1; it <= budget.max_iters; ++it) {
        // Two-loop recursion for the quasi-Newton direction.
        Eigen::VectorXd q = grad;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd dir = -q;
        double slope = grad.dot(dir);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            dir = -grad;
            slope = -grad.squaredNorm();
        }
        if (!(slope < 0.0)) {
            fit.converged = true; // zero gradient
            break;
        }

        double t = s_hist.empty() ? std::min(1.0, 1.0 / grad.norm()) : 1.0;
        bool accepted = false;
        Eigen::VectorXd x_new;
        Ansatz a_new;
        Evaluated e_new;
        for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
            x_new = x + t * dir;
            a_new = coords.unpack(x_new, norms);
            e_new = problem.evaluate(a_new);
            if (e_new.value <= current.value + kArmijo * t * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (!s_hist.empty()) {
                // Retry from steepest descent before giving up.
                s_hist.clear();
                y_hist.clear();
                rho_hist.clear();
                --it;
                continue;
            }
            // No decrease even along the gradient: numerically stationary.
            fit.converged = true;
            break;
        }

        const double decrease = current.value - e_new.value;
        Eigen::VectorXd grad_new = coords.gradient(problem, a_new, e_new, norms);
        Eigen::VectorXd s_vec = x_new - x;
        Eigen::VectorXd y_vec = grad_new - grad;
        const double sy = s_vec.dot(y_vec);
        if (sy > 1e-12 * s_vec.norm() * y_vec.norm()) {
            if (s_hist.size() == kMemory) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
        }
        x = std::move(x_new);
        ansatz = std::move(a_new);
        current = std::move(e_new);
        grad = std::move(grad_new);
        fit.floored = fit.floored || current.floored;

        // Block vectors only grow along the (scale-free) radial direction;
        // renormalize when they drift far and restart the curvature memory.
        if (std::any_of(norms.begin(), norms.end(), [](double n) { return n < 0.5 || n > 2.0; })) {
            x = coords.pack(ansatz);
            grad = coords.gradient(problem, ansatz, current, std::vector<double>(norms.size(), 1.0));
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        if (decrease <= budget.tol * std::max(1.0, std::abs(current.value))) {
            if (++stalled >= 3) {
                fit.converged = true;
                break;
            }
        } else {
            stalled = 0;
        }
    }
    fit.nats = std::max(current.value, 0.0);
    fit.iterations = std::min(it, budget.max_iters);
    return fit;
}

} // namespace

SeparableFit minimize_relative_entropy_restart(const Eigen::MatrixXcd &rho, std::span<const int> dims,
                                               std::span<const PartyMask> blocks,
                                               const OptimizerBudget &budget, std::uint64_t stream,
                                               int restart) {
    const Problem problem(rho, make_layout(dims, blocks));
    return run_restart(problem, dims, budget, stream, restart);
}

SeparableFit minimize_relative_entropy(const Eigen::MatrixXcd &rho, std::span<const int> dims,
                                       std::span<const PartyMask> blocks, const OptimizerBudget &budget,
                                       std::uint64_t stream, bool parallel_restarts) {
    budget.validate();
    const Problem problem(rho, make_layout(dims, blocks));
    if (problem.layout().dimension != rho.rows() || rho.rows() != rho.cols()) {
        throw std::invalid_argument("rho does not match the block layout");
    }
    const int restarts = budget.restarts;
    std::vector<SeparableFit> fits(static_cast<std::size_t>(restarts));
    const bool go_parallel = parallel_restarts && !omp_in_parallel() && restarts > 1;
#pragma omp parallel for schedule(dynamic) if (go_parallel)
    for (int r = 0; r < restarts; ++r) {
        fits[static_cast<std::size_t>(r)] = run_restart(problem, dims, budget, stream, r);
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < fits.size(); ++r) {
        if (fits[r].nats < fits[best].nats) best = r;
    }
    return fits[best];
}

} // namespace multient
