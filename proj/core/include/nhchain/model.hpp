#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nhchain/types.hpp"

namespace nhchain {

enum class PauliAxis { X, Y, Z };

/// One weighted two-site coupling of the literal Hamiltonian sum.
/// Sites are 1-indexed and already wrapped to [1, N]; strength carries the
/// full J_ij (including the power-law factor for long-range kinds). The
/// list preserves the order and multiplicity of the double sum, so the
/// pair at ring distance N/2 of a long-range chain appears twice.
struct PairCoupling {
  int site_a;
  int site_b;
  double strength;
};

/// Tensor product of single-site Pauli matrices with identity on unlisted
/// sites. Sites are 1-indexed and must be distinct; site 1 is the most
/// significant bit of the basis index.
DenseOperator pauli_string(int n_sites,
                           std::span<const std::pair<int, PauliAxis>> placements);

/// Dense matrix of the Hamiltonian described by `spec` (validated first).
DenseOperator build_hamiltonian(const ModelSpec& spec);

/// Parity operator xi = prod_i sigma_i^z: diagonal entries (-1)^{#down}.
DenseOperator build_parity(int n_sites);

/// Global rotation R = exp(-i pi/4 sum_j sigma_j^z) (diagonal).
DenseOperator build_rotation(int n_sites);

/// The bond list of the literal sum in the order the sum visits it.
std::vector<PairCoupling> pair_couplings(const ModelSpec& spec);

/// Per-site field (h1 + (-1)^i h2)/2 with h_k = lambda_k * J, 1-indexed.
std::vector<double> site_fields(const ModelSpec& spec);

/// max |(RT)H - H(RT)| over entries, with R the pi/2 z-rotation and T
/// complex conjugation; zero (to roundoff) for the imaginary-anisotropy
/// kinds. R alone maps gamma -> -gamma, so the Hermitian references with
/// real anisotropy are not RT-invariant.
double rt_commutator_norm(const DenseOperator& op);

/// max |H xi - xi H| over entries.
double parity_commutator_norm(const DenseOperator& op);

}  // namespace nhchain
