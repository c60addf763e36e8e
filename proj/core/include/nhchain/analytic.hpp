#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nhchain/types.hpp"

namespace nhchain {

enum class ParitySector { Even, Odd };

/// 4x4 momentum-space block of the nearest-neighbor iATXY Hamiltonian.
/// parity_sector is set when the block was built on one of the
/// parity-dependent momentum grids, and empty for a free-standing k.
struct MomentumBlock {
  double k = 0.0;
  Eigen::Matrix4cd entries;
  std::optional<ParitySector> parity_sector;

  /// Eigenvalues of the block, sorted by (real, imag).
  std::array<cxd, 4> eigenvalues() const;
};

/// Predicted real-spectrum onset (value) and the Hermitian factorization
/// field it derives from (hermitian_value, absent when the radicand is
/// negative).
struct SurfacePrediction {
  struct Inputs {
    double lambda2_or_delta = 0.0;
    double gamma = 0.0;
    std::optional<double> alpha;
    std::optional<int> n_sites;
  };
  double value = 0.0;
  ModelKind kind = ModelKind::IATXY;
  Inputs inputs;
  std::optional<double> hermitian_value;
};

/// The 4x4 block at momentum k for reduced fields (lambda1, lambda2) and
/// anisotropy gamma.
MomentumBlock momentum_block(double k, double lambda1, double lambda2,
                             double gamma,
                             std::optional<ParitySector> sector = std::nullopt);

/// Parity-dependent momentum grid: Even sector k = 2 pi (p + 1/2) / N,
/// Odd sector k = 2 pi p / N, p = 0 .. N/2 - 1.
std::vector<double> momentum_grid(int n_sites, ParitySector sector);

/// Single-particle branches (E^k_+, E^k_-) as principal square roots of
/// the squared branches.
std::pair<cxd, cxd> dispersion(double k, double lambda1, double lambda2,
                               double gamma);

/// The squared branches ((E^k_+)^2, (E^k_-)^2): base +- 2 sqrt(radicand)
/// with radicand = lambda1^2 lambda2^2 + lambda1^2 cos^2 k
/// - lambda2^2 gamma^2 sin^2 k. A negative radicand makes the squares a
/// conjugate pair, which happens at small lambda1 (deep broken phase).
std::pair<cxd, cxd> dispersion_squared(double k, double lambda1, double lambda2,
                                       double gamma);

/// Real classifier for momentum k: >= 0 exactly when both branches are
/// real there. Equals (E^k_-)^2 where the squares are real, and the
/// (negative) radicand where they are complex.
double reality_margin(double k, double lambda1, double lambda2, double gamma);

/// Lattice sum K(alpha, N) = sum_{d=1}^{N/2} d^-alpha.
double lattice_sum(double alpha, int n_sites);

/// Real-spectrum onset for the given kind:
///   iATXY:  lambda1^s = sqrt(1 + lambda2^2 + gamma^2)
///   iXYZ:   lambda^s  = sqrt((1 + delta)^2 + gamma^2)
/// multiplied by K(alpha, N) for the long-range kinds. hermitian_value is
/// the corresponding factorization field with +gamma^2 -> -gamma^2.
/// Hermitian kinds return the factorization field itself as `value`.
SurfacePrediction reality_threshold(ModelKind kind, double lambda2_or_delta,
                                    double gamma,
                                    std::optional<double> alpha = std::nullopt,
                                    std::optional<int> n_sites = std::nullopt);

/// Interior minimizer of the reality margin (equivalently of (E^k_-)^2 in
/// the real-squares region) over k in [0, pi], by dense scan plus
/// golden-section refinement (resolution <= 1e-6 in k); empty when the
/// minimum sits at an endpoint.
std::optional<double> extremal_momentum(double lambda1, double lambda2,
                                        double gamma);

/// min over k in [0, pi] of the reality margin (continuum). The sign
/// flips exactly at the predicted surface.
double min_reality_margin(double lambda1, double lambda2, double gamma);

}  // namespace nhchain
