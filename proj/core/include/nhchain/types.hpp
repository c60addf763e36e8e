#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nhchain {

inline constexpr const char* kVersion = "0.1.0";

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when an input record (spec, config, CLI flags) is malformed.
/// The message names the offending field.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical backend fails (eigensolver non-convergence,
/// non-real spectrum where a real one is required, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ModelKind {
  IATXY,
  IXYZ,
  IATXY_LR,
  IXYZ_LR,
  HERMITIAN_ATXY,
  HERMITIAN_XYZ,
};

enum class Boundary { Periodic };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Full parameterization of one Hamiltonian instance.
///
/// Reduced couplings: lambda1 = h1/J (uniform field), lambda2 = h2/J
/// (alternating field, ATXY kinds only), delta = z-coupling/J (XYZ kinds
/// only), alpha = power-law exponent (long-range kinds only).
struct ModelSpec {
  ModelKind kind = ModelKind::IATXY;
  int n_sites = 2;
  double coupling_j = 1.0;
  double gamma = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double delta = 0.0;
  std::optional<double> alpha;
  Boundary boundary = Boundary::Periodic;

  static constexpr int kMaxSites = 14;

  bool is_long_range() const {
    return kind == ModelKind::IATXY_LR || kind == ModelKind::IXYZ_LR;
  }
  bool is_xyz() const {
    return kind == ModelKind::IXYZ || kind == ModelKind::IXYZ_LR ||
           kind == ModelKind::HERMITIAN_XYZ;
  }
  bool is_hermitian() const {
    return kind == ModelKind::HERMITIAN_ATXY || kind == ModelKind::HERMITIAN_XYZ;
  }

  /// Throws SpecError naming the offending field.
  void validate() const;
};

/// 2^N x 2^N complex matrix with optional model provenance.
///
/// Basis convention (fixed throughout): computational basis, site 1 is the
/// most significant bit, bit 0 corresponds to sigma^z eigenvalue +1.
struct DenseOperator {
  Eigen::Index dim = 0;
  Matrix entries;
  std::optional<ModelSpec> spec;
};

}  // namespace nhchain
