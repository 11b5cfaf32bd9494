#pragma once

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "agsplab/spectral.hpp"

namespace agsplab::lapack {

inline void check(lapack_int info, const char* what) {
  if (info != 0) throw Error(std::string(what) + " failed with info " + std::to_string(info));
}

// in-place; on return a holds eigenvectors when vectors is set
template <class M>
void eigen_fallback(M& a, RVector& w, bool vectors) {
  Eigen::SelfAdjointEigenSolver<M> es(a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  w = es.eigenvalues();
  if (vectors) a = es.eigenvectors();
}

template <class M>
void eigen_lowest(M& a, int k, RVector& w, M& z) {
  Eigen::SelfAdjointEigenSolver<M> es(a);
  w = es.eigenvalues().head(k);
  z = es.eigenvectors().leftCols(k);
}

inline void syevd(RMatrix& a, RVector& w, bool vectors) {
  if (!lapack_backend_ok()) return eigen_fallback(a, w, vectors);
  lapack_int n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  check(LAPACKE_dsyevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, a.data(), n, w.data()), "dsyevd");
}

inline void heevd(Matrix& a, RVector& w, bool vectors) {
  if (!lapack_backend_ok()) return eigen_fallback(a, w, vectors);
  lapack_int n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  check(LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'U', n, a.data(), n, w.data()), "zheevd");
}

inline void syevr_lowest(RMatrix& a, int k, RVector& w, RMatrix& z) {
  if (!lapack_backend_ok()) return eigen_lowest(a, k, w, z);
  lapack_int n = static_cast<lapack_int>(a.rows());
  lapack_int found = 0;
  RVector all(n);
  z.resize(n, k);
  std::vector<lapack_int> support(2 * static_cast<size_t>(k));
  check(LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, k, 0.0, &found, all.data(),
                       z.data(), n, support.data()),
        "dsyevr");
  w = all.head(found);
}

inline void heevr_lowest(Matrix& a, int k, RVector& w, Matrix& z) {
  if (!lapack_backend_ok()) return eigen_lowest(a, k, w, z);
  lapack_int n = static_cast<lapack_int>(a.rows());
  lapack_int found = 0;
  RVector all(n);
  z.resize(n, k);
  std::vector<lapack_int> support(2 * static_cast<size_t>(k));
  check(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, k, 0.0, &found, all.data(),
                       z.data(), n, support.data()),
        "zheevr");
  w = all.head(found);
}

template <class M>
RVector gesdd_values(M& a) {
  if (!lapack_backend_ok()) return Eigen::BDCSVD<M>(a).singularValues();
  lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  RVector s(std::min(m, n));
  lapack_int info;
  if constexpr (std::is_same_v<typename M::Scalar, double>)
    info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m, s.data(), nullptr, 1, nullptr, 1);
  else
    info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, a.data(), m, s.data(), nullptr, 1, nullptr, 1);
  check(info, "gesdd");
  return s;
}

}  // namespace agsplab::lapack
