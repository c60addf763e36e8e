#include "lapack_eig.hpp"

#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace nhchain::detail {

namespace {

// The sweep layers parallelize across grid points; keep the BLAS kernels
// single-threaded so runs are reproducible and cores are not oversubscribed.
struct BlasThreadGuard {
  BlasThreadGuard() { openblas_set_num_threads(1); }
};

void ensure_single_threaded_blas() { static BlasThreadGuard guard; }

[[noreturn]] void fail(const char* routine, lapack_int info) {
  throw NumericalError(std::string(routine) + " failed with info=" +
                       std::to_string(info));
}

}  // namespace

ComplexEig eig_general_complex(Eigen::MatrixXcd a, bool want_vectors) {
  ensure_single_threaded_blas();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  ComplexEig out;
  out.values.resize(n);
  Eigen::MatrixXcd vr;
  if (want_vectors) vr.resize(n, n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n,
      out.values.data(), nullptr, 1, want_vectors ? vr.data() : nullptr,
      want_vectors ? n : 1);
  if (info != 0) fail("zgeev", info);
  if (want_vectors) out.vectors = std::move(vr);
  return out;
}

ComplexEig eig_general_real(Eigen::MatrixXd a, bool want_vectors) {
  ensure_single_threaded_blas();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd wr(n), wi(n);
  Eigen::MatrixXd vr;
  if (want_vectors) vr.resize(n, n);
  const lapack_int info = LAPACKE_dgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n, wr.data(),
      wi.data(), nullptr, 1, want_vectors ? vr.data() : nullptr,
      want_vectors ? n : 1);
  if (info != 0) fail("dgeev", info);

  ComplexEig out;
  out.values.resize(n);
  for (lapack_int j = 0; j < n; ++j) out.values(j) = cxd{wr(j), wi(j)};
  if (want_vectors) {
    // dgeev packs conjugate pairs as (re, im) column pairs.
    out.vectors.resize(n, n);
    lapack_int j = 0;
    while (j < n) {
      if (wi(j) != 0.0 && j + 1 < n) {
        out.vectors.col(j) = vr.col(j).cast<cxd>() + cxd{0.0, 1.0} * vr.col(j + 1).cast<cxd>();
        out.vectors.col(j + 1) = out.vectors.col(j).conjugate();
        j += 2;
      } else {
        out.vectors.col(j) = vr.col(j).cast<cxd>();
        ++j;
      }
    }
  }
  return out;
}

ComplexEig eig_hermitian(Eigen::MatrixXcd a, bool want_vectors) {
  ensure_single_threaded_blas();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zheev(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) fail("zheev", info);
  ComplexEig out;
  out.values = w.cast<cxd>();
  if (want_vectors) out.vectors = std::move(a);
  return out;
}

ComplexEig eig_symmetric_real(Eigen::MatrixXd a, bool want_vectors) {
  ensure_single_threaded_blas();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_dsyev(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) fail("dsyev", info);
  ComplexEig out;
  out.values = w.cast<cxd>();
  if (want_vectors) out.vectors = a.cast<cxd>();
  return out;
}

}  // namespace nhchain::detail
