#include "nhchain/model.hpp"

#include <bit>
#include <cmath>
#include <set>

namespace nhchain {

namespace {

constexpr cxd kI{0.0, 1.0};

Eigen::Matrix2cd pauli_matrix(PauliAxis axis) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (axis) {
    case PauliAxis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::Y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case PauliAxis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > ModelSpec::kMaxSites) {
    throw SpecError("n_sites: must be in [1, " +
                    std::to_string(ModelSpec::kMaxSites) + "], got " +
                    std::to_string(n_sites));
  }
}

// sigma^z eigenvalue of site `site` (1-indexed) in basis state b.
inline int sz_of(Eigen::Index b, int n_sites, int site) {
  return ((b >> (n_sites - site)) & 1) ? -1 : 1;
}

inline int wrap_site(int site, int n_sites) { return (site - 1) % n_sites + 1; }

}  // namespace

void ModelSpec::validate() const {
  if (n_sites < 2 || n_sites > kMaxSites) {
    throw SpecError("n_sites: must be in [2, " + std::to_string(kMaxSites) +
                    "], got " + std::to_string(n_sites));
  }
  if (n_sites % 2 != 0) {
    throw SpecError("n_sites: must be even, got " + std::to_string(n_sites));
  }
  if (coupling_j == 0.0 || !std::isfinite(coupling_j)) {
    throw SpecError("coupling_j: must be nonzero and finite");
  }
  if (gamma < 0.0 || !std::isfinite(gamma)) {
    throw SpecError("gamma: must be >= 0 and finite");
  }
  if (!std::isfinite(lambda1)) throw SpecError("lambda1: must be finite");
  if (!std::isfinite(lambda2)) throw SpecError("lambda2: must be finite");
  if (!std::isfinite(delta)) throw SpecError("delta: must be finite");
  if (is_xyz() && lambda2 != 0.0) {
    throw SpecError("lambda2: must be 0 for XYZ kinds");
  }
  if (!is_xyz() && delta != 0.0) {
    throw SpecError("delta: must be 0 for ATXY kinds");
  }
  if (is_long_range()) {
    if (!alpha) throw SpecError("alpha: required for long-range kinds");
    if (*alpha <= 0.0 || !std::isfinite(*alpha)) {
      throw SpecError("alpha: must be > 0 and finite");
    }
  } else if (alpha) {
    throw SpecError("alpha: only allowed for long-range kinds");
  }
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::IATXY: return "iatxy";
    case ModelKind::IXYZ: return "ixyz";
    case ModelKind::IATXY_LR: return "iatxy_lr";
    case ModelKind::IXYZ_LR: return "ixyz_lr";
    case ModelKind::HERMITIAN_ATXY: return "hermitian_atxy";
    case ModelKind::HERMITIAN_XYZ: return "hermitian_xyz";
  }
  throw SpecError("kind: invalid enum value");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "iatxy") return ModelKind::IATXY;
  if (name == "ixyz") return ModelKind::IXYZ;
  if (name == "iatxy_lr") return ModelKind::IATXY_LR;
  if (name == "ixyz_lr") return ModelKind::IXYZ_LR;
  if (name == "hermitian_atxy") return ModelKind::HERMITIAN_ATXY;
  if (name == "hermitian_xyz") return ModelKind::HERMITIAN_XYZ;
  throw SpecError("kind: unknown model kind '" + name + "'");
}

DenseOperator pauli_string(int n_sites,
                           std::span<const std::pair<int, PauliAxis>> placements) {
  check_site_count(n_sites);
  std::set<int> seen;
  for (const auto& [site, axis] : placements) {
    if (site < 1 || site > n_sites) {
      throw SpecError("site: " + std::to_string(site) + " out of range [1, " +
                      std::to_string(n_sites) + "]");
    }
    if (!seen.insert(site).second) {
      throw SpecError("site: duplicate placement on site " + std::to_string(site));
    }
  }

  // Fold kron from site N inward so site 1 ends up as the outermost
  // factor, i.e. the most significant bit.
  Matrix acc = Matrix::Ones(1, 1);
  for (int site = n_sites; site >= 1; --site) {
    Eigen::Matrix2cd factor = Eigen::Matrix2cd::Identity();
    for (const auto& [s, axis] : placements) {
      if (s == site) factor = pauli_matrix(axis);
    }
    Matrix next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        next.block(r * acc.rows(), c * acc.cols(), acc.rows(), acc.cols()) =
            factor(r, c) * acc;
      }
    }
    acc = std::move(next);
  }
  return DenseOperator{acc.rows(), std::move(acc), std::nullopt};
}

std::vector<PairCoupling> pair_couplings(const ModelSpec& spec) {
  std::vector<PairCoupling> pairs;
  const int n = spec.n_sites;
  if (spec.is_long_range()) {
    for (int i = 1; i <= n; ++i) {
      for (int d = 1; d <= n / 2; ++d) {
        pairs.push_back({i, wrap_site(i + d, n),
                         spec.coupling_j / std::pow(double(d), *spec.alpha)});
      }
    }
  } else {
    for (int i = 1; i <= n; ++i) {
      pairs.push_back({i, wrap_site(i + 1, n), spec.coupling_j});
    }
  }
  return pairs;
}

std::vector<double> site_fields(const ModelSpec& spec) {
  std::vector<double> fields(spec.n_sites);
  const double h1 = spec.lambda1 * spec.coupling_j;
  const double h2 = spec.lambda2 * spec.coupling_j;
  for (int i = 1; i <= spec.n_sites; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;  // (-1)^i, 1-indexed
    fields[i - 1] = 0.5 * (h1 + sign * h2);
  }
  return fields;
}

DenseOperator build_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;

  Matrix h = Matrix::Zero(dim, dim);

  // xx/yy bond terms. In the computational basis a bond (a, b) produces
  //   hop      |..0..1..> <-> |..1..0..>  with element J_ab/2
  //   pairflip |..0..0..> <-> |..1..1..>  with element i*gamma*J_ab/2
  // (gamma*J_ab/2 for the Hermitian kinds, where the anisotropy is real).
  const cxd flip_coeff = spec.is_hermitian() ? cxd{spec.gamma / 2.0, 0.0}
                                             : cxd{0.0, spec.gamma / 2.0};
  for (const auto& pc : pair_couplings(spec)) {
    const Eigen::Index mask_a = Eigen::Index{1} << (n - pc.site_a);
    const Eigen::Index mask_b = Eigen::Index{1} << (n - pc.site_b);
    const Eigen::Index mask = mask_a | mask_b;
    for (Eigen::Index b = 0; b < dim; ++b) {
      const bool bit_a = (b & mask_a) != 0;
      const bool bit_b = (b & mask_b) != 0;
      if (bit_a != bit_b) {
        h(b ^ mask, b) += pc.strength * 0.5;
      } else {
        h(b ^ mask, b) += flip_coeff * pc.strength;
      }
    }
    if (spec.is_xyz()) {
      const double zz = spec.delta * pc.strength / 4.0;
      for (Eigen::Index b = 0; b < dim; ++b) {
        h(b, b) += zz * sz_of(b, n, pc.site_a) * sz_of(b, n, pc.site_b);
      }
    }
  }

  const auto fields = site_fields(spec);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double f = 0.0;
    for (int i = 1; i <= n; ++i) f += fields[i - 1] * sz_of(b, n, i);
    h(b, b) += f;
  }

  return DenseOperator{dim, std::move(h), spec};
}

DenseOperator build_parity(int n_sites) {
  check_site_count(n_sites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Matrix xi = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    xi(b, b) = (std::popcount(static_cast<unsigned long long>(b)) % 2 == 0) ? 1.0 : -1.0;
  }
  return DenseOperator{dim, std::move(xi), std::nullopt};
}

DenseOperator build_rotation(int n_sites) {
  check_site_count(n_sites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Matrix r = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int m = n_sites - 2 * std::popcount(static_cast<unsigned long long>(b));
    r(b, b) = std::exp(-kI * (M_PI / 4.0) * double(m));
  }
  return DenseOperator{dim, std::move(r), std::nullopt};
}

double rt_commutator_norm(const DenseOperator& op) {
  const int n = static_cast<int>(std::countr_zero(
      static_cast<unsigned long long>(op.dim)));
  const DenseOperator r = build_rotation(n);
  // (RT)H - H(RT) acting on a vector v is R conj(H) conj(v) - H R conj(v),
  // so the matrix to test is R conj(H) - H R.
  const Matrix lhs = r.entries * op.entries.conjugate();
  const Matrix rhs = op.entries * r.entries;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double parity_commutator_norm(const DenseOperator& op) {
  const int n = static_cast<int>(std::countr_zero(
      static_cast<unsigned long long>(op.dim)));
  const DenseOperator xi = build_parity(n);
  return (op.entries * xi.entries - xi.entries * op.entries).cwiseAbs().maxCoeff();
}

}  // namespace nhchain
