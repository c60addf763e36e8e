#pragma once

// Basis-level symmetry machinery shared by the eigensolver dispatch and the
// momentum-sector sweep engine:
//   - parity (sigma^z product) index split,
//   - the diagonal phase rotation exp(i pi/8 sum sigma^z) that turns the
//     imaginary-anisotropy Hamiltonians into real matrices,
//   - orbits of basis states under translation by two sites.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nhchain/types.hpp"

namespace nhchain::detail {

int site_count_of_dim(Eigen::Index dim);

// sum_i sigma^z_i eigenvalue of basis state b.
int magnetization(Eigen::Index b, int n_sites);

// sum_i (-1)^i sigma^z_i eigenvalue (1-indexed sites, site 1 = MSB).
int alternating_magnetization(Eigen::Index b, int n_sites);

// Indices grouped by parity: first even (+1), then odd (-1); each ascending.
struct ParitySplit {
  std::vector<Eigen::Index> even;
  std::vector<Eigen::Index> odd;
};
ParitySplit parity_split(Eigen::Index dim);

// True when every entry of h connecting opposite-parity states vanishes.
bool is_parity_blocked(const Eigen::MatrixXcd& h, const ParitySplit& split,
                       double threshold);

// Phase of the realifying rotation on basis state b:
// s_b = exp(i pi/8 * magnetization(b)).
cxd realify_phase(Eigen::Index b, int n_sites);

// Orbits of n-bit basis states under rotate-by-two-sites.
struct OrbitTable {
  int n_sites = 0;
  int cells = 0;  // n_sites / 2 = translation group order
  std::vector<int32_t> orbit_len;   // per state
  std::vector<int32_t> shift;       // state = tau^shift(representative)
  std::vector<Eigen::Index> rep;    // representative (orbit minimum) per state
  std::vector<Eigen::Index> reps;   // sorted list of representatives
};
OrbitTable build_orbit_table(int n_sites);

// Translate a basis state by two sites.
Eigen::Index translate_by_two(Eigen::Index b, int n_sites);

}  // namespace nhchain::detail
