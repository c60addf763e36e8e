#pragma once

// Internal decompositions behind the public eig operations: the
// structure-exploiting block eigensolver and the momentum-sector engine
// used by the detection sweeps.

#include <vector>

#include "nhchain/types.hpp"
#include "symmetry.hpp"

namespace nhchain::detail {

struct EigBlockResult {
  std::vector<Eigen::Index> idx;  // basis states of the block (full space)
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // eigenvectors of H[idx, idx]; empty if not requested
};

struct StructuredEig {
  Eigen::Index dim = 0;
  std::vector<EigBlockResult> blocks;
};

StructuredEig eig_structured(const Eigen::MatrixXcd& h, bool want_vectors);

// One translation-momentum sector of a model, with the uniform-field part
// kept out of `block` so sweeps only touch the diagonal:
//   H_q(lambda1) = block + lambda1 * diag(field_m).
struct SweepSector {
  int q = 0;
  double theta = 0.0;
  std::vector<Eigen::Index> basis;  // orbit representatives
  Eigen::MatrixXcd block;
  Eigen::VectorXd field_m;
};

struct SweepBlocks {
  ModelSpec spec;
  OrbitTable table;
  std::vector<SweepSector> sectors;  // materialized for q <= cells/2 only
};

SweepBlocks prepare_sweep_blocks(const ModelSpec& spec);
std::vector<cxd> sweep_spectrum(const SweepBlocks& sb, double lambda1);
cxd sweep_trace(const SweepBlocks& sb, double lambda1);

}  // namespace nhchain::detail
