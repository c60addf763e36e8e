#include "nhchain/analytic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace nhchain {

namespace {

struct Branches {
  double base;
  double radicand;
};

// Invariants of the 4x4 block at momentum k: the squared branches are
// base +- 2 sqrt(radicand). The radicand sign term is fixed by the block's
// characteristic polynomial, (E+^2 - E-^2)^2 / 4 = lambda1^2 lambda2^2
// + lambda1^2 cos^2 k - lambda2^2 gamma^2 sin^2 k, and can be negative,
// in which case the squares themselves form a conjugate pair.
Branches squared_branches(double k, double lambda1, double lambda2,
                          double gamma) {
  const double c = std::cos(k);
  const double s = std::sin(k);
  const double base = lambda1 * lambda1 + lambda2 * lambda2 + c * c -
                      gamma * gamma * s * s;
  const double radicand = lambda1 * lambda1 * lambda2 * lambda2 +
                          lambda1 * lambda1 * c * c -
                          lambda2 * lambda2 * gamma * gamma * s * s;
  return {base, radicand};
}

}  // namespace

MomentumBlock momentum_block(double k, double lambda1, double lambda2,
                             double gamma, std::optional<ParitySector> sector) {
  const double c = std::cos(k);
  const double s = std::sin(k);
  Eigen::Matrix4cd m;
  m << lambda1 + c, -gamma * s, 0.0, -lambda2,
       gamma * s, -lambda1 - c, lambda2, 0.0,
       0.0, lambda2, c - lambda1, -gamma * s,
       -lambda2, 0.0, gamma * s, -c + lambda1;
  return MomentumBlock{k, m, sector};
}

std::array<cxd, 4> MomentumBlock::eigenvalues() const {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(entries, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("momentum block eigensolver failed");
  }
  std::array<cxd, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](cxd a, cxd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<double> momentum_grid(int n_sites, ParitySector sector) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw SpecError("n_sites: momentum grid needs an even chain length");
  }
  std::vector<double> ks(n_sites / 2);
  for (int p = 0; p < n_sites / 2; ++p) {
    const double offset = (sector == ParitySector::Even) ? 0.5 : 0.0;
    ks[p] = 2.0 * M_PI * (p + offset) / n_sites;
  }
  return ks;
}

std::pair<cxd, cxd> dispersion_squared(double k, double lambda1, double lambda2,
                                       double gamma) {
  const Branches b = squared_branches(k, lambda1, lambda2, gamma);
  const cxd root = std::sqrt(cxd{b.radicand, 0.0});
  return {b.base + 2.0 * root, b.base - 2.0 * root};
}

std::pair<cxd, cxd> dispersion(double k, double lambda1, double lambda2,
                               double gamma) {
  const auto [plus_sq, minus_sq] = dispersion_squared(k, lambda1, lambda2, gamma);
  return {std::sqrt(plus_sq), std::sqrt(minus_sq)};
}

double reality_margin(double k, double lambda1, double lambda2, double gamma) {
  const Branches b = squared_branches(k, lambda1, lambda2, gamma);
  if (b.radicand < 0.0) return b.radicand;
  return b.base - 2.0 * std::sqrt(b.radicand);
}

double lattice_sum(double alpha, int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw SpecError("n_sites: lattice sum needs an even chain length");
  }
  double sum = 0.0;
  for (int d = 1; d <= n_sites / 2; ++d) sum += std::pow(double(d), -alpha);
  return sum;
}

SurfacePrediction reality_threshold(ModelKind kind, double lambda2_or_delta,
                                    double gamma, std::optional<double> alpha,
                                    std::optional<int> n_sites) {
  const bool long_range = kind == ModelKind::IATXY_LR || kind == ModelKind::IXYZ_LR;
  if (long_range) {
    if (!alpha) throw SpecError("alpha: required for long-range kinds");
    if (!n_sites) throw SpecError("n_sites: required for long-range kinds");
  }

  const bool xyz_like = kind == ModelKind::IXYZ || kind == ModelKind::IXYZ_LR ||
                        kind == ModelKind::HERMITIAN_XYZ;
  const double base = xyz_like
                          ? (1.0 + lambda2_or_delta) * (1.0 + lambda2_or_delta)
                          : 1.0 + lambda2_or_delta * lambda2_or_delta;
  const double scale = long_range ? lattice_sum(*alpha, *n_sites) : 1.0;

  const double herm_radicand = base - gamma * gamma;
  std::optional<double> hermitian_value;
  if (herm_radicand >= 0.0) hermitian_value = std::sqrt(herm_radicand) * scale;

  SurfacePrediction out;
  out.kind = kind;
  out.inputs = {lambda2_or_delta, gamma, alpha, n_sites};
  out.hermitian_value = hermitian_value;
  if (kind == ModelKind::HERMITIAN_ATXY || kind == ModelKind::HERMITIAN_XYZ) {
    if (!hermitian_value) {
      throw SpecError("gamma: no factorization surface, radicand negative");
    }
    out.value = *hermitian_value;
  } else {
    out.value = std::sqrt(base + gamma * gamma) * scale;
  }
  return out;
}

namespace {

// Golden-section refinement of a bracketed minimum.
double refine_minimum(double lo, double hi, double lambda1, double lambda2,
                      double gamma) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = reality_margin(c, lambda1, lambda2, gamma);
  double fd = reality_margin(d, lambda1, lambda2, gamma);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = reality_margin(c, lambda1, lambda2, gamma);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = reality_margin(d, lambda1, lambda2, gamma);
    }
  }
  return 0.5 * (a + b);
}

struct ScanResult {
  double k;
  double value;
  bool interior;
};

ScanResult scan_minimum(double lambda1, double lambda2, double gamma) {
  constexpr int kSamples = 4096;
  int best = 0;
  double best_val = reality_margin(0.0, lambda1, lambda2, gamma);
  for (int i = 1; i <= kSamples; ++i) {
    const double k = M_PI * i / kSamples;
    const double v = reality_margin(k, lambda1, lambda2, gamma);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best == 0 || best == kSamples) {
    return {M_PI * best / kSamples, best_val, false};
  }
  const double lo = M_PI * (best - 1) / kSamples;
  const double hi = M_PI * (best + 1) / kSamples;
  const double k_min = refine_minimum(lo, hi, lambda1, lambda2, gamma);
  return {k_min, reality_margin(k_min, lambda1, lambda2, gamma), true};
}

}  // namespace

std::optional<double> extremal_momentum(double lambda1, double lambda2,
                                        double gamma) {
  const ScanResult r = scan_minimum(lambda1, lambda2, gamma);
  if (!r.interior || r.k < 1e-6 || r.k > M_PI - 1e-6) return std::nullopt;
  return r.k;
}

double min_reality_margin(double lambda1, double lambda2, double gamma) {
  return scan_minimum(lambda1, lambda2, gamma).value;
}

}  // namespace nhchain
