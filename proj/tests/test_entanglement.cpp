#include <doctest.h>

#include <cmath>

#include "agsplab/entanglement.hpp"
#include "agsplab/lattice.hpp"
#include "agsplab/spectral.hpp"
#include "oracles.hpp"

using namespace agsplab;

namespace {

// tail Schmidt weight beyond D at every bond, from a plain JacobiSVD of the reshaped state
std::vector<double> tail_weights(const Vector& psi, int n, long D) {
  std::vector<double> out;
  for (int cut = 1; cut < n; ++cut) {
    long dl = 1L << cut, dr = 1L << (n - cut);
    Matrix m(dl, dr);
    for (long i = 0; i < dl; ++i)
      for (long j = 0; j < dr; ++j) m(i, j) = psi(i * dr + j);
    Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(m).singularValues();
    double t = 0;
    for (long j = D; j < s.size(); ++j) t += s(j) * s(j);
    out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("state matrix convention") {
  Vector v = Vector::Zero(8);
  v(6) = 1;  // |110>
  Matrix m = state_matrix(v, 1, 3);
  CHECK(m.rows() == 2);
  CHECK(m(1, 2) == cplx(1, 0));
  CHECK_THROWS_AS(state_matrix(v, 4, 3), InvalidArgument);
}

TEST_CASE("product and Bell states") {
  Vector prod = Vector::Zero(4);
  prod(1) = 1;
  auto s = schmidt_decompose(prod, 1, 2);
  CHECK(schmidt_rank(s) == 1);
  CHECK(entropy(s) == doctest::Approx(0.0));
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  auto b = schmidt_decompose(bell, 1, 2);
  CHECK(schmidt_rank(b) == 2);
  CHECK(entropy(b) == doctest::Approx(std::log(2.0)));
  CHECK(renyi2(b) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(schmidt_decompose(2.0 * bell, 1, 2), InvalidArgument);
}

TEST_CASE("Schmidt vectors rebuild the state") {
  std::mt19937_64 rng(4);
  for (int cut : {0, 1, 3, 6}) {
    Vector psi = oracle::random_state(rng, 64);
    auto s = schmidt_decompose(psi, cut, 6);
    CHECK((reconstruct(s) - psi).norm() < 1e-12);
    CHECK(std::abs(s.coefficients.squaredNorm() - 1) < 1e-12);
  }
  Vector l = oracle::random_state(rng, 4), r = oracle::random_state(rng, 8);
  CHECK((product_state(l, r) - oracle::kron(l, r)).norm() < 1e-14);
}

TEST_CASE("entropy from Schmidt data and from the reduced density agree") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Vector psi = oracle::random_state(rng, 128);
    int cut = 1 + trial % 6;
    auto s = schmidt_decompose(psi, cut, 7);
    Matrix rho = reduced_density_left(psi, cut, 7);
    CHECK(std::abs(entropy(s) - entropy_of_density(rho)) < 1e-9);
    CHECK(std::abs(renyi2(s) - renyi2_of_density(rho)) < 1e-9);
    CHECK(renyi2(s) <= entropy(s) + 1e-12);
  }
}

TEST_CASE("Eckart-Young on random states") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Vector psi = oracle::random_state(rng, 64);
    auto s = schmidt_decompose(psi, 3, 6);
    for (long D = 1; D <= 8; ++D) {
      CHECK(eckart_young_check(psi, truncate_schmidt(s, D, false), 3, 6, 2, 1e-12).holds);
      CHECK(eckart_young_check(psi, truncate_schmidt(s, D, true), 3, 6, 2, 1e-12).holds);
    }
    Vector other = oracle::random_state(rng, 64);
    CHECK(eckart_young_check(psi, other, 3, 6, 2, 1e-12).holds);
  }
  Vector psi = oracle::random_state(rng, 64);
  auto s = schmidt_decompose(psi, 3, 6);
  auto rec = eckart_young_check(psi, truncate_schmidt(s, 2, false), 3, 6);
  double tail = s.coefficients.tail(6).squaredNorm();
  CHECK(rec.lhs == doctest::Approx(tail));
  CHECK(rec.rhs == doctest::Approx(tail));
}

TEST_CASE("truncation keeps the requested rank") {
  std::mt19937_64 rng(2);
  Vector psi = oracle::random_state(rng, 64);
  auto s = schmidt_decompose(psi, 3, 6);
  Vector t = truncate_schmidt(s, 3, true);
  CHECK(std::abs(t.norm() - 1) < 1e-12);
  CHECK(schmidt_rank(t, 3, 6) == 3);
}

TEST_CASE("lossless MPS compression") {
  std::mt19937_64 rng(17);
  Vector psi = oracle::random_state(rng, 256);
  auto mps = mps_compress(psi, 8, 1L << 8);
  CHECK((mps.contract() - psi).norm() < 1e-10);
  CHECK(mps.left_canonical_defect() < 1e-10);
  CHECK(mps.bond_dims == std::vector<long>{2, 4, 8, 16, 8, 4, 2});
}

TEST_CASE("truncated MPS compression") {
  auto h = build_long_range_ising(10, 3.0, 1.0, 2.0);
  Vector psi = ground_state(assemble_dense(h)).state;
  double prev = 1e300;
  for (long D : {1, 2, 4, 8, 16}) {
    auto mps = mps_compress(psi, 10, D);
    for (long b : mps.bond_dims) CHECK(b <= D);
    CHECK(mps.left_canonical_defect() < 1e-10);
    auto ref = tail_weights(psi, 10, D);
    REQUIRE(ref.size() == mps.truncation_weights.size());
    for (size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ref[i] - mps.truncation_weights[i]) < 1e-12);
    auto rec = claim7_check(psi, mps, D);
    CHECK(rec.holds);
    CHECK(rec.lhs <= prev + 1e-15);
    prev = rec.lhs;
  }
  CHECK_THROWS_AS(mps_compress(psi, 10, 0), InvalidArgument);
}

TEST_CASE("numerical rank tolerance") {
  CHECK(numerical_rank_tolerance(1.0) == doctest::Approx(1e-10));
  CHECK(numerical_rank_tolerance(1e-5) == doctest::Approx(1e-12));
}
