#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "agsplab/effective.hpp"
#include "oracles.hpp"

using namespace agsplab;

namespace {

struct Fixture {
  Hamiltonian h = build_long_range_ising(8, 3.0, 1.0, 2.0);
  TruncatedHamiltonian t = shift_block_energies(truncate_interactions(h, decompose_blocks(8, 2, 2)));
};

}  // namespace

TEST_CASE("lambda constants") {
  auto l = compute_lambdas(4.3633, 3.0, 2);
  CHECK(l.lambda == doctest::Approx(1.0 / (12 * 4.3633 * 4 + 12)));
  CHECK(l.lambda_prime == doctest::Approx(1.0 / (112 * 3.0)));
  auto m = compute_lambdas(0.5, 1.0, 1);
  CHECK(m.lambda_prime == doctest::Approx(1.0 / 112));
  CHECK(compute_lambdas(1.0, 0.1, 2).lambda_prime == doctest::Approx(1.0 / 48));
}

TEST_CASE("energy cutoff clamps the spectrum") {
  std::mt19937_64 rng(12);
  Matrix h = oracle::random_hermitian(rng, 16);
  Eigen::VectorXd w = oracle::hermitian_eigenvalues(h);
  double tau = w(7);
  Eigen::VectorXd clamped = w.cwiseMin(tau);
  std::sort(clamped.data(), clamped.data() + clamped.size());
  Matrix c = energy_cutoff(h, tau);
  CHECK((oracle::hermitian_eigenvalues(c) - clamped).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((c * h - h * c).norm() < 1e-9);
}

TEST_CASE("effective Hamiltonian keeps bonds and clamps blocks") {
  Fixture f;
  auto eff = build_effective(f.t, 3.0);
  for (int s = 0; s < f.t.blocks.count(); ++s) {
    Eigen::VectorXd w = oracle::hermitian_eigenvalues(eff.internal_eff[s].matrix);
    CHECK(w.maxCoeff() <= eff.tau_s[s] + 1e-10);
    CHECK(eff.tau_s[s] == doctest::Approx(f.t.block_ground(s) + 3.0));
  }
  Matrix bonds = f.t.dense() - eff.dense() - eff.dense_difference();
  CHECK(bonds.norm() < 1e-10);
  auto wide = build_effective(f.t, 1e3);
  CHECK((wide.dense() - f.t.dense()).norm() < 1e-9);
  CHECK_THROWS_AS(build_effective(f.t, 0.0), InvalidArgument);
}

TEST_CASE("effective norm and gap bounds at tau=6") {
  Fixture f;
  auto eff = build_effective(f.t, 6.0);
  auto sp = effective_spectra(eff);
  auto rep = effective_norm_check(eff, sp);
  CHECK(rep.size() == 3);
  CHECK(all_hold(rep));
  double norm = oracle::hermitian_eigenvalues(eff.dense()).cwiseAbs().maxCoeff();
  CHECK(rep[0].lhs == doctest::Approx(norm));
  CHECK(norm <= 4 * (6.0 + 2 * f.t.envelope.g0));
}

TEST_CASE("cutoff threshold formula") {
  Fixture f;
  double gap = 2.0;
  auto l = compute_lambdas(f.t.g, f.t.envelope.g0, f.t.k);
  double g0 = f.t.envelope.g0;
  double a = 8 * g0 + std::log(88 * g0 * 3 * 4 / gap) / l.lambda_prime;
  double b = 4 * g0 + std::log(432.0 * 4 / (l.lambda * gap)) / l.lambda;
  CHECK(theorem5_tau_threshold(f.t, gap) == doctest::Approx(std::max(a, b)));
}

TEST_CASE("overlap diagnostics along a tau grid") {
  Fixture f;
  auto eff0 = build_effective(f.t, 1.0);
  auto sp0 = effective_spectra(eff0);
  double star = theorem5_tau_threshold(f.t, sp0.gs_t.gap);
  std::vector<double> grid{1, 2, 3, 4, 5, 6, 8, 10, star};
  auto res = theorem5_check(f.t, grid);
  CHECK(all_hold(res.records));
  REQUIRE(res.points.size() == grid.size());
  CHECK(res.points.back().precondition_met);
  CHECK(!res.points.front().precondition_met);
  CHECK(res.points.back().overlap_distance < 1e-10);
  std::vector<double> x, y;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    x.push_back(grid[i]);
    y.push_back(res.points[i].overlap_distance);
  }
  auto fit = fit_log_decay(x, y);
  CHECK(fit.slope < 0);
  CHECK(fit.r_squared >= 0.9);
  CHECK_THROWS_AS(theorem5_check(f.t, {3, 2}), InvalidArgument);
}

TEST_CASE("log-decay fit of an exact exponential") {
  std::vector<double> x{0, 1, 2, 3}, y;
  for (double v : x) y.push_back(3 * std::exp(-0.7 * v));
  auto fit = fit_log_decay(x, y);
  CHECK(fit.slope == doctest::Approx(-0.7));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  y.push_back(0.0);
  x.push_back(4);
  CHECK(fit_log_decay(x, y).points == 4);
}

TEST_CASE("energy distribution, difference and filter bounds") {
  Fixture f;
  auto eff = build_effective(f.t, 6.0);
  auto sp = effective_spectra(eff);
  double gap = sp.gs_t.gap;
  std::vector<double> dE{0, 0.5 * gap, gap, 2 * gap, 4 * gap}, dEp{0.5 * gap, gap, 2 * gap, 4 * gap, 8 * gap};
  auto dist = energy_distribution_check(eff, sp, dEp, dE);
  CHECK(dist.size() == 2 * 25 * 4);
  CHECK(all_hold(dist));
  CHECK(all_hold(effective_difference_check(eff, sp, dE)));

  std::mt19937_64 rng(1);
  for (int s = 0; s < f.t.blocks.count(); ++s) {
    const auto& bs = f.t.block_spectra[s];
    Matrix O = bs.eigenvectors * oracle::random_hermitian(rng, bs.eigenvalues.size()).diagonal().asDiagonal() *
               bs.eigenvectors.adjoint();
    for (bool e : {false, true})
      for (double a : dE) {
        double base = e ? sp.gs_eff.energy : sp.gs_t.energy;
        CHECK(all_hold(exponential_filter_check(eff, sp, s, O, base + a, base + a + gap, e)));
      }
  }
  Matrix x = Matrix::Zero(f.t.internal[1].matrix.rows(), f.t.internal[1].matrix.cols());
  x(0, 1) = x(1, 0) = 1;
  CHECK_THROWS_AS(exponential_filter_check(eff, sp, 1, x, 0.0, 1.0), PreconditionFailed);
}

TEST_CASE("commutator bound and its direct evaluation") {
  Fixture f;
  auto rep = commutator_check(f.t);
  REQUIRE(rep.size() == f.t.bonds.size());
  CHECK(all_hold(rep));
  Matrix ht = f.t.dense();
  for (size_t s = 0; s < f.t.bonds.size(); ++s) {
    std::vector<int> sites;
    for (int x : f.t.bonds[s].support) sites.push_back(x - 1);
    Matrix hb = oracle::embed(f.t.bonds[s].matrix, sites, 8, 2);
    Matrix comm = ht * hb - hb * ht;
    CHECK(rep[s].lhs == doctest::Approx(Eigen::JacobiSVD<Matrix>(comm).singularValues()(0)).epsilon(1e-8));
  }
}
