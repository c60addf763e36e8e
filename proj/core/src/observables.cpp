#include "nhchain/observables.hpp"

#include <array>
#include <bit>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "structured_eig.hpp"
#include "symmetry.hpp"

namespace nhchain {

namespace {

constexpr cxd kI{0.0, 1.0};

std::array<Eigen::Matrix2cd, 3> pauli_basis() {
  std::array<Eigen::Matrix2cd, 3> sigma;
  sigma[0] << 0, 1, 1, 0;
  sigma[1] << 0, -kI, kI, 0;
  sigma[2] << 1, 0, 0, -1;
  return sigma;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

ThermalState thermal_state(const DenseOperator& op, double beta,
                           const ThermalOptions& options) {
  if (beta <= 0.0) throw SpecError("beta: must be > 0");

  const detail::StructuredEig decomp =
      detail::eig_structured(op.entries, true);
  double max_imag = 0.0, scale = 0.0, e0 = 0.0;
  bool first = true;
  for (const auto& block : decomp.blocks) {
    for (Eigen::Index i = 0; i < block.values.size(); ++i) {
      const cxd v = block.values(i);
      max_imag = std::max(max_imag, std::abs(v.imag()));
      scale = std::max(scale, std::abs(v));
      if (first || v.real() < e0) e0 = v.real();
      first = false;
    }
  }
  if (!options.allow_complex_spectrum &&
      max_imag > options.tol * std::max(1.0, scale)) {
    throw NumericalError(
        "thermal_state: spectrum is not real at tolerance (max |Im| = " +
        std::to_string(max_imag) + ")");
  }

  // exp(-beta H) assembled block by block, shifted by the minimal real part
  // before exponentiating to avoid overflow.
  Matrix w = Matrix::Zero(op.entries.rows(), op.entries.cols());
  cxd z_analytic{0.0, 0.0};
  double cond = 0.0;
  for (const auto& block : decomp.blocks) {
    Vector weights(block.values.size());
    for (Eigen::Index i = 0; i < block.values.size(); ++i) {
      weights(i) = std::exp(-beta * (block.values(i) - e0));
    }
    z_analytic += weights.sum();
    Eigen::PartialPivLU<Matrix> lu(block.vectors);
    const Matrix v_inv = lu.inverse();
    cond = std::max(cond, block.vectors.cwiseAbs().colwise().sum().maxCoeff() *
                              v_inv.cwiseAbs().colwise().sum().maxCoeff());
    const Matrix w_block = block.vectors * weights.asDiagonal() * v_inv;
    const Eigen::Index m = static_cast<Eigen::Index>(block.idx.size());
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < m; ++r) {
        w(block.idx[r], block.idx[c]) = w_block(r, c);
      }
    }
  }
  const cxd z_matrix = w.trace();

  ThermalState state;
  state.beta = beta;
  state.trace_error = std::abs(z_matrix / z_analytic - 1.0);
  state.ill_conditioned = cond > 1e12;
  state.rho = w / z_matrix;
  return state;
}

TwoSiteState partial_trace_two_site(const Matrix& rho, int n_sites, int site_a,
                                    int site_b) {
  const int n = n_sites;
  if (site_a < 1 || site_b < 1 || site_a > n || site_b > n) {
    throw SpecError("site: out of range [1, " + std::to_string(n) + "]");
  }
  if (site_a == site_b) throw SpecError("site: site_a must differ from site_b");
  if (site_a > site_b) throw SpecError("site: require site_a < site_b");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw SpecError("rho: dimension does not match n_sites");
  }

  const int pa = n - site_a;
  const int pb = n - site_b;
  std::vector<int> rest;
  for (int p = n - 1; p >= 0; --p) {
    if (p != pa && p != pb) rest.push_back(p);
  }

  TwoSiteState out;
  out.source_sites = {site_a, site_b};
  out.rho12.setZero();
  const Eigen::Index n_rest = Eigen::Index{1} << (n - 2);
  for (Eigen::Index r = 0; r < n_rest; ++r) {
    Eigen::Index envelope = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if ((r >> j) & 1) envelope |= Eigen::Index{1} << rest[j];
    }
    for (int row = 0; row < 4; ++row) {
      const Eigen::Index x = envelope |
                             (Eigen::Index{(row >> 1) & 1} << pa) |
                             (Eigen::Index{row & 1} << pb);
      for (int col = 0; col < 4; ++col) {
        const Eigen::Index y = envelope |
                               (Eigen::Index{(col >> 1) & 1} << pa) |
                               (Eigen::Index{col & 1} << pb);
        out.rho12(row, col) += rho(x, y);
      }
    }
  }

  return two_site_state_from_matrix(out.rho12, out.source_sites);
}

TwoSiteState two_site_state_from_matrix(const Eigen::Matrix4cd& rho12,
                                        std::pair<int, int> source_sites) {
  TwoSiteState out;
  out.rho12 = rho12;
  out.source_sites = source_sites;
  const auto sigma = pauli_basis();
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 3; ++i) {
    out.m(i) = (rho12 * kron2(sigma[i], id2)).trace();
    out.m_prime(i) = (rho12 * kron2(id2, sigma[i])).trace();
    for (int j = 0; j < 3; ++j) {
      out.c(i, j) = (rho12 * kron2(sigma[i], sigma[j])).trace();
    }
  }
  return out;
}

Eigen::Matrix4cd pauli_reconstruct(const Eigen::Vector3cd& m,
                                   const Eigen::Vector3cd& m_prime,
                                   const Eigen::Matrix3cd& c) {
  const auto sigma = pauli_basis();
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += m(i) * kron2(sigma[i], id2);
    rho += m_prime(i) * kron2(id2, sigma[i]);
    for (int j = 0; j < 3; ++j) {
      rho += c(i, j) * kron2(sigma[i], sigma[j]);
    }
  }
  return rho / 4.0;
}

Eigen::Matrix4cd partial_transpose_b(const TwoSiteState& state) {
  Eigen::Matrix4cd out;
  for (int sa = 0; sa < 2; ++sa) {
    for (int sb = 0; sb < 2; ++sb) {
      for (int ta = 0; ta < 2; ++ta) {
        for (int tb = 0; tb < 2; ++tb) {
          out(2 * sa + sb, 2 * ta + tb) = state.rho12(2 * sa + tb, 2 * ta + sb);
        }
      }
    }
  }
  return out;
}

NegativityDiagnostics log_negativity_diagnostics(const TwoSiteState& state) {
  const Eigen::Matrix4cd pt = partial_transpose_b(state);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(pt);
  NegativityDiagnostics diag;
  diag.trace_norm = svd.singularValues().sum();
  diag.raw = std::log2(diag.trace_norm);
  diag.value = std::max(diag.raw, 0.0);
  return diag;
}

double log_negativity(const TwoSiteState& state) {
  return log_negativity_diagnostics(state).value;
}

double parity_expectation(const Matrix& rho, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw SpecError("rho: dimension does not match n_sites");
  }
  cxd expectation{0.0, 0.0};
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double sign =
        (std::popcount(static_cast<unsigned long long>(b)) % 2 == 0) ? 1.0 : -1.0;
    expectation += sign * rho(b, b);
  }
  if (std::abs(expectation.imag()) > 1e-8) {
    throw NumericalError("parity_expectation: imaginary part " +
                         std::to_string(expectation.imag()) + " exceeds 1e-8");
  }
  return expectation.real();
}

}  // namespace nhchain
