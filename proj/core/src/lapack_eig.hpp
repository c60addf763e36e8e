#pragma once

// Thin wrappers over the LAPACK dense eigensolvers (zgeev/dgeev/zheev/dsyev).
// Matrices are passed by value: LAPACK overwrites its input.

#include <Eigen/Dense>

#include "nhchain/types.hpp"

namespace nhchain::detail {

struct ComplexEig {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // right eigenvectors as columns; empty unless requested
};

ComplexEig eig_general_complex(Eigen::MatrixXcd a, bool want_vectors);
ComplexEig eig_general_real(Eigen::MatrixXd a, bool want_vectors);
ComplexEig eig_hermitian(Eigen::MatrixXcd a, bool want_vectors);
ComplexEig eig_symmetric_real(Eigen::MatrixXd a, bool want_vectors);

}  // namespace nhchain::detail
