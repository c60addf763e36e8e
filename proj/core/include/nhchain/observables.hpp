#pragma once

#include <utility>

#include "nhchain/eig.hpp"
#include "nhchain/types.hpp"

namespace nhchain {

/// Canonical state e^{-beta H} / Tr(e^{-beta H}). For a non-Hermitian
/// source with real spectrum the matrix is generally non-Hermitian; it is
/// deliberately not symmetrized.
struct ThermalState {
  double beta = 0.0;
  Matrix rho;
  double trace_error = 0.0;      // |Tr(rho) - 1| before renormalization
  bool ill_conditioned = false;  // eigenvector condition number > 1e12
};

struct ThermalOptions {
  double tol = kDefaultRealityTol;
  /// The spectrum-reality precheck is mandatory per the operation contract;
  /// this opt-out exists for diagnostics that remain well defined on a
  /// conjugate-paired complex spectrum (e.g. the parity expectation).
  bool allow_complex_spectrum = false;
};

ThermalState thermal_state(const DenseOperator& op, double beta,
                           const ThermalOptions& options = {});

/// Two-site reduced state with its Pauli-basis coefficients. For a
/// non-Hermitian parent state the coefficients are complex; the
/// reconstruction identity holds either way.
struct TwoSiteState {
  Eigen::Matrix4cd rho12;
  Eigen::Vector3cd m;        // Tr(rho12 sigma^i x I)
  Eigen::Vector3cd m_prime;  // Tr(rho12 I x sigma^i)
  Eigen::Matrix3cd c;        // Tr(rho12 sigma^i x sigma^j)
  std::pair<int, int> source_sites;
};

/// Reduction of a 2^N-dimensional trace-1 matrix onto sites (a, b),
/// 1 <= a < b <= N, in the fixed bit-ordering convention.
TwoSiteState partial_trace_two_site(const Matrix& rho, int n_sites, int site_a,
                                    int site_b);

/// Pauli-basis decomposition of an already-reduced 4x4 matrix.
TwoSiteState two_site_state_from_matrix(const Eigen::Matrix4cd& rho12,
                                        std::pair<int, int> source_sites = {1, 2});

/// Pauli-basis expansion (I + m.sigma x I + I x m'.sigma + C_ij sigma x sigma)/4.
Eigen::Matrix4cd pauli_reconstruct(const Eigen::Vector3cd& m,
                                   const Eigen::Vector3cd& m_prime,
                                   const Eigen::Matrix3cd& c);

/// Transpose on the second tensor factor.
Eigen::Matrix4cd partial_transpose_b(const TwoSiteState& state);

struct NegativityDiagnostics {
  double trace_norm = 0.0;  // sum of singular values of rho^{T_b}
  double raw = 0.0;         // log2(trace_norm), may be negative
  double value = 0.0;       // max(raw, 0)
};

/// Logarithmic negativity log2 ||rho^{T_b}||_1 (trace norm as the sum of
/// singular values, well defined for non-Hermitian inputs), clamped at 0.
double log_negativity(const TwoSiteState& state);
NegativityDiagnostics log_negativity_diagnostics(const TwoSiteState& state);

/// Re Tr(rho xi) with xi the sigma^z-product parity operator; throws when
/// the imaginary part exceeds 1e-8.
double parity_expectation(const Matrix& rho, int n_sites);

}  // namespace nhchain
