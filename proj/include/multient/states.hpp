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
 * @file states.hpp
 * Dense pure states and density matrices over a fixed list of parties,
 * plus the operations needed by the entanglement measures: GHZ and Schmidt
 * builders, tensor products, partial traces, entropies and product Kraus
 * channels acting on generalized parties.
 *
 * Index convention: party 1 is the most significant tensor index.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "multient/parties.hpp"

namespace multient {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = std::size_t{1} << 14;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;
inline constexpr double kEigenvalueCutoff = 1e-12;

/// Raised when a matrix that must be a density matrix is not one.
class InvalidState : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Local dimensions per party; party i has dims()[i-1].
class SystemShape {
  public:
    explicit SystemShape(std::vector<int> dims);
    static SystemShape qubits(int n);

    [[nodiscard]] const std::vector<int> &dims() const { return dims_; }
    [[nodiscard]] int num_parties() const { return static_cast<int>(dims_.size()); }
    [[nodiscard]] int dim(int party) const { return dims_.at(static_cast<std::size_t>(party - 1)); }
    [[nodiscard]] std::size_t dimension() const { return dimension_; }
    /// Product of the local dimensions of `gp`.
    [[nodiscard]] std::size_t dimension(const GeneralizedParty &gp) const;
    [[nodiscard]] GeneralizedParty all_parties() const { return GeneralizedParty::first(num_parties()); }
    /// Local dimensions of the parties in `gp`, in party order.
    [[nodiscard]] SystemShape restricted_to(const GeneralizedParty &gp) const;

    friend bool operator==(const SystemShape &, const SystemShape &) = default;

  private:
    std::vector<int> dims_;
    std::size_t dimension_ = 1;
};

class PureState {
  public:
    /// Throws InvalidState unless the vector has the shape's length and unit norm.
    PureState(SystemShape shape, Eigen::VectorXcd amplitudes);
    /// Normalizes first; throws on a zero vector.
    static PureState normalized(SystemShape shape, Eigen::VectorXcd amplitudes);
    /// |0...0>.
    static PureState zero(SystemShape shape);

    [[nodiscard]] const SystemShape &shape() const { return shape_; }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    [[nodiscard]] int num_parties() const { return shape_.num_parties(); }

  private:
    SystemShape shape_;
    Eigen::VectorXcd amplitudes_;
};

class DensityMatrix {
  public:
    /// Throws InvalidState unless Hermitian, unit trace and PSD within tolerance.
    DensityMatrix(SystemShape shape, Eigen::MatrixXcd matrix);
    static DensityMatrix from_pure(const PureState &psi);

    [[nodiscard]] const SystemShape &shape() const { return shape_; }
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const { return matrix_; }
    [[nodiscard]] int num_parties() const { return shape_.num_parties(); }
    /// Tr(rho^2).
    [[nodiscard]] double purity() const;

  private:
    struct Unchecked {};
    DensityMatrix(SystemShape shape, Eigen::MatrixXcd matrix, Unchecked);
    friend DensityMatrix partial_trace(const DensityMatrix &, const GeneralizedParty &);
    friend DensityMatrix partial_trace(const PureState &, const GeneralizedParty &);
    friend DensityMatrix tensor(const DensityMatrix &, const DensityMatrix &);

    SystemShape shape_;
    Eigen::MatrixXcd matrix_;
};

/// One selective measurement or channel step made of product operators.
/// `blocks` partitions all parties into GPs; outcome k applies
/// outcomes[k][q] to blocks[q] for every q simultaneously.
struct ProductKrausChannel {
    std::vector<GeneralizedParty> blocks;
    std::vector<std::vector<Eigen::MatrixXcd>> outcomes;
};

/// A single (probability, post-measurement state) pair.
struct Outcome {
    double probability;
    PureState state;
};

PureState make_ghz(const GeneralizedParty &subset, const SystemShape &shape);
PureState make_schmidt_state(std::span<const Complex> coefficients, const SystemShape &shape);
PureState make_schmidt_state(std::span<const double> coefficients, const SystemShape &shape);

/// Tensor product with b's parties appended after a's.
PureState tensor(const PureState &a, const PureState &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Tensor product over the same N parties: party i of the result holds
/// party i of a and party i of b, with dimension d_a(i) * d_b(i) and a's
/// part as the more significant digit.
PureState tensor_aligned(const PureState &a, const PureState &b);
/// `copies` aligned copies of psi (copies >= 1).
PureState tensor_copies_aligned(const PureState &psi, int copies);

/// Reordering of tensor positions: party i of the result is party
/// order[i-1] of the input.
PureState permute_parties(const PureState &psi, std::span<const int> order);

DensityMatrix partial_trace(const DensityMatrix &rho, const GeneralizedParty &keep);
DensityMatrix partial_trace(const PureState &psi, const GeneralizedParty &keep);

/// Eigenvalues of a density matrix clamped to [0, 1], ascending. Throws
/// InvalidState if the smallest is below -kPsdTolerance.
Eigen::VectorXd spectrum(const Eigen::MatrixXcd &rho);

/// -sum lambda ln lambda in nats; eigenvalues below kEigenvalueCutoff count as 0.
double von_neumann_entropy(const DensityMatrix &rho);
double von_neumann_entropy(const Eigen::MatrixXcd &rho);

/// True when every off-diagonal entry is below `tol` in magnitude, i.e. the
/// state is a mixture of computational product states.
bool is_diagonal_in_product_basis(const Eigen::MatrixXcd &rho, double tol = 1e-12);

/// Applies `op` to the parties in `gp`; the result is not renormalized.
Eigen::VectorXcd apply_local_operator(const PureState &psi, const GeneralizedParty &gp,
                                      const Eigen::MatrixXcd &op);

/// Largest eigenvalue of sum_k G_k^dagger G_k, with G_k the product operator
/// of outcome k. Throws std::invalid_argument for malformed channels.
double channel_completeness(const ProductKrausChannel &channel, const SystemShape &shape);

/// Outcome ensemble {(p_k, G_k psi / |G_k psi|)}; outcomes with p_k below
/// 1e-12 are dropped. Throws std::invalid_argument if the channel's
/// completeness exceeds 1 + 1e-9.
std::vector<Outcome> apply_selective_measurement(const PureState &psi,
                                                 const ProductKrausChannel &channel);

/// Haar-random state vector and unitary.
PureState haar_random_state(const SystemShape &shape, std::mt19937_64 &rng);
Eigen::MatrixXcd haar_random_unitary(Eigen::Index dim, std::mt19937_64 &rng);

/// JSON `{"dims":[...],"amplitudes":[[re,im],...]}`; amplitudes written with
/// 17 significant digits.
std::string write_state_json(const PureState &psi);
/// Validates length and normalization; throws InvalidState or ParseError.
PureState read_state_json(const std::string &text);
PureState load_state_file(const std::string &path);
void save_state_file(const PureState &psi, const std::string &path);

} // namespace multient
