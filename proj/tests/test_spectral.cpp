#include <doctest.h>

#include "agsplab/lattice.hpp"
#include "agsplab/spectral.hpp"
#include "oracles.hpp"

using namespace agsplab;

TEST_CASE("linked LAPACK passes its self-test") { CHECK(lapack_backend_ok()); }

TEST_CASE("full eigendecomposition against an independent solver") {
  std::mt19937_64 rng(11);
  for (bool real : {true, false}) {
    Matrix m = oracle::random_hermitian(rng, 300, real);
    auto s = eigendecompose(m);
    CHECK((s.eigenvalues - oracle::hermitian_eigenvalues(m)).cwiseAbs().maxCoeff() < 1e-10);
    const Matrix& v = s.eigenvectors;
    CHECK((v.adjoint() * v - Matrix::Identity(300, 300)).norm() < 1e-10);
    CHECK((m * v - v * s.eigenvalues.cast<cplx>().asDiagonal()).norm() < 1e-9);
  }
}

TEST_CASE("decoupled blocks are found and solved separately") {
  std::mt19937_64 rng(2);
  Matrix a = oracle::random_hermitian(rng, 5), b = oracle::random_hermitian(rng, 4);
  std::vector<long> perm{0, 5, 1, 6, 2, 7, 3, 8, 4};
  Matrix m = Matrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      long pi = perm[i], pj = perm[j];
      if (pi < 5 && pj < 5) m(i, j) = a(pi, pj);
      if (pi >= 5 && pj >= 5) m(i, j) = b(pi - 5, pj - 5);
    }
  CHECK(decoupled_blocks(m).size() == 2);
  auto s = eigendecompose(m);
  CHECK((s.eigenvalues - oracle::hermitian_eigenvalues(m)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m * s.eigenvectors - s.eigenvectors * s.eigenvalues.cast<cplx>().asDiagonal()).norm() < 1e-12);
  auto low = lowest_eigenpairs(m, 3);
  CHECK(low.eigenvalues.size() == 3);
  CHECK((low.eigenvalues - s.eigenvalues.head(3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lowest eigenpairs") {
  std::mt19937_64 rng(4);
  Matrix m = oracle::random_hermitian(rng, 120);
  auto ref = oracle::hermitian_eigenvalues(m);
  auto s = lowest_eigenpairs(m, 4);
  CHECK((s.eigenvalues - ref.head(4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((m * s.eigenvectors - s.eigenvectors * s.eigenvalues.cast<cplx>().asDiagonal()).norm() < 1e-9);
  RMatrix r = oracle::random_hermitian(rng, 100, true).real();
  auto sr = lowest_eigenpairs(r, 2);
  CHECK((sr.eigenvalues - oracle::hermitian_eigenvalues(r.cast<cplx>()).head(2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("frozen gap of the n=8 Ising chain") {
  auto g = ground_state(assemble_dense(build_long_range_ising(8, 3.0, 1.0, 2.0)));
  CHECK(g.energy == doctest::Approx(-16.831884911425902).epsilon(1e-12));
  CHECK(g.gap == doctest::Approx(2.397328047305237).epsilon(1e-10));
}

TEST_CASE("non-Hermitian input and degenerate ground states are rejected") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigendecompose(m), InvalidArgument);
  CHECK_THROWS_AS(ground_state(Matrix(Matrix::Identity(3, 3))), DegenerateGroundState);
}

TEST_CASE("interval projectors") {
  std::mt19937_64 rng(8);
  Matrix m = oracle::random_hermitian(rng, 40);
  auto s = eigendecompose(m);
  double cut = s.eigenvalues(9);
  Matrix p = interval_projector(s, Interval::at_most(cut));
  CHECK((p * p - p).norm() < 1e-10);
  CHECK(p.trace().real() == doctest::Approx(10));
  CHECK(interval_rank(s, Interval::below(cut)) == 9);
  CHECK(interval_rank(s, Interval::above(cut)) == 30);
  CHECK(interval_rank(s, Interval::at_least(cut)) == 31);
  CHECK((p * m - m * p).norm() < 1e-9);
  CHECK(interval_basis(s, Interval::all()).cols() == 40);
}

TEST_CASE("norms and singular values") {
  std::mt19937_64 rng(6);
  Matrix a = Matrix::Random(30, 17);
  Eigen::JacobiSVD<Matrix> svd(a);
  CHECK((singular_values(a) - svd.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(operator_norm(a) == doctest::Approx(svd.singularValues()(0)));
  Matrix h = oracle::random_hermitian(rng, 20);
  CHECK(hermitian_norm(h) == doctest::Approx(oracle::hermitian_eigenvalues(h).cwiseAbs().maxCoeff()));
  CHECK(operator_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("phase alignment") {
  std::mt19937_64 rng(7);
  Vector ref = oracle::random_state(rng, 16), v = oracle::random_state(rng, 16);
  Vector a = phase_aligned(ref, v * std::polar(1.0, 2.1));
  cplx o = ref.dot(a);
  CHECK(std::abs(o.imag()) < 1e-14);
  CHECK(o.real() >= 0);
  CHECK(aligned_distance(ref, v) == doctest::Approx(aligned_distance(ref, v * std::polar(1.0, -0.4))));
  CHECK(aligned_distance(ref, ref * std::polar(1.0, 1.0)) < 1e-14);
}
