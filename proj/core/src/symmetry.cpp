#include "symmetry.hpp"

#include <bit>
#include <cmath>

namespace nhchain::detail {

int site_count_of_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw SpecError("dim: operator dimension must be a power of two >= 2");
  }
  return std::countr_zero(static_cast<unsigned long long>(dim));
}

int magnetization(Eigen::Index b, int n_sites) {
  return n_sites - 2 * std::popcount(static_cast<unsigned long long>(b));
}

int alternating_magnetization(Eigen::Index b, int n_sites) {
  int m = 0;
  for (int i = 1; i <= n_sites; ++i) {
    const int sz = ((b >> (n_sites - i)) & 1) ? -1 : 1;
    m += (i % 2 == 0) ? sz : -sz;
  }
  return m;
}

ParitySplit parity_split(Eigen::Index dim) {
  ParitySplit split;
  split.even.reserve(dim / 2);
  split.odd.reserve(dim / 2);
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (std::popcount(static_cast<unsigned long long>(b)) % 2 == 0) {
      split.even.push_back(b);
    } else {
      split.odd.push_back(b);
    }
  }
  return split;
}

bool is_parity_blocked(const Eigen::MatrixXcd& h, const ParitySplit& split,
                       double threshold) {
  for (Eigen::Index r : split.even) {
    for (Eigen::Index c : split.odd) {
      if (std::abs(h(r, c)) > threshold || std::abs(h(c, r)) > threshold) {
        return false;
      }
    }
  }
  return true;
}

cxd realify_phase(Eigen::Index b, int n_sites) {
  return std::exp(cxd{0.0, 1.0} * (M_PI / 8.0) *
                  double(magnetization(b, n_sites)));
}

Eigen::Index translate_by_two(Eigen::Index b, int n_sites) {
  return ((b >> 2) | ((b & 3) << (n_sites - 2))) &
         ((Eigen::Index{1} << n_sites) - 1);
}

OrbitTable build_orbit_table(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw SpecError("n_sites: orbit table needs an even chain length");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  OrbitTable table;
  table.n_sites = n_sites;
  table.cells = n_sites / 2;
  table.orbit_len.assign(dim, 0);
  table.shift.assign(dim, 0);
  table.rep.assign(dim, -1);

  for (Eigen::Index b = 0; b < dim; ++b) {
    if (table.rep[b] != -1) continue;
    // b is the orbit minimum: states are visited in ascending order.
    Eigen::Index cur = b;
    int len = 0;
    do {
      table.rep[cur] = b;
      table.shift[cur] = len;
      cur = translate_by_two(cur, n_sites);
      ++len;
    } while (cur != b);
    cur = b;
    for (int j = 0; j < len; ++j) {
      table.orbit_len[cur] = len;
      cur = translate_by_two(cur, n_sites);
    }
    table.reps.push_back(b);
  }
  return table;
}

}  // namespace nhchain::detail
