#include "agsplab/effective.hpp"

#include <algorithm>
#include <cmath>

namespace agsplab {

namespace {

const double kFilterConstant = 4 * std::exp(1.5) / (std::exp(1.0) - 1);

Matrix apply_block(const TruncatedHamiltonian& t, int s, const Matrix& local, const Matrix& in) {
  Matrix out = Matrix::Zero(in.rows(), in.cols());
  for (const auto& op : t.block_op(s, local)) kernels::omp::apply(op, t.lattice.n, t.lattice.d, in, out);
  return out;
}

double norm_or_zero(const Matrix& m) { return m.cols() == 0 || m.rows() == 0 ? 0.0 : operator_norm(m); }

}  // namespace

Lambdas compute_lambdas(double g, double g0, int k) {
  Lambdas l;
  double k2 = double(k) * k;
  l.lambda = 1.0 / (12 * g * k2 + 4 * g0);
  l.lambda_prime = std::min(1.0 / (112 * g0), 1.0 / (12 * g * k2));
  return l;
}

Matrix energy_cutoff(const SpectralData& s, double tau_s) {
  RVector clamped = s.eigenvalues.cwiseMin(tau_s);
  return s.eigenvectors * clamped.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
}

Matrix energy_cutoff(const Matrix& h, double tau_s) { return energy_cutoff(eigendecompose(h), tau_s); }

Matrix EffectiveHamiltonian::dense() const {
  std::vector<InteractionTerm> all = internal_eff;
  all.insert(all.end(), base.bonds.begin(), base.bonds.end());
  return assemble_terms(all, base.lattice.n, base.lattice.d);
}

Matrix EffectiveHamiltonian::dense_difference() const {
  std::vector<InteractionTerm> diff;
  for (size_t s = 0; s < internal_eff.size(); ++s)
    diff.emplace_back(base.internal[s].support, base.internal[s].matrix - internal_eff[s].matrix, base.lattice.d);
  return assemble_terms(diff, base.lattice.n, base.lattice.d);
}

EffectiveHamiltonian build_effective(const TruncatedHamiltonian& t, double tau) {
  if (!(tau > 0)) throw InvalidArgument("cut-off offset tau must be positive");
  EffectiveHamiltonian e;
  e.base = t;
  e.tau = tau;
  for (int s = 0; s < t.blocks.count(); ++s) {
    double ts = t.block_ground(s) + tau;
    e.tau_s.push_back(ts);
    Matrix m = energy_cutoff(t.block_spectra[s], ts);
    m = (0.5 * (m + m.adjoint())).eval();
    e.internal_eff.emplace_back(t.internal[s].support, std::move(m), t.lattice.d);
  }
  e.lambdas = compute_lambdas(t.g, t.envelope.g0, t.k);
  return e;
}

EffectiveSpectra effective_spectra(const EffectiveHamiltonian& eff, const SpectralData* truncated) {
  EffectiveSpectra sp;
  sp.truncated = truncated ? *truncated : eigendecompose(eff.base.dense());
  sp.effective = eigendecompose(eff.dense());
  sp.gs_t = ground_state(sp.truncated);
  sp.gs_eff = ground_state(sp.effective);
  return sp;
}

Report effective_norm_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp) {
  const auto& t = eff.base;
  int q = t.blocks.q;
  double g0 = t.envelope.g0;
  double norm = std::max(std::abs(sp.effective.eigenvalues(0)),
                         std::abs(sp.effective.eigenvalues(sp.effective.eigenvalues.size() - 1)));
  std::string c = ctx({{"tau", eff.tau}});
  Report out;
  out.push_back(make_record("effnorm", norm, eff.tau * (q + 2) + 2 * g0 * (q + 1), c));
  out.push_back(make_record("lemma13.gap", sp.gs_eff.gap, 2 * t.g + 2 * g0, c));
  out.push_back(make_record("lemma13.gap-g0", sp.gs_eff.gap, 4 * g0, c));
  return out;
}

double theorem5_tau_threshold(const TruncatedHamiltonian& t, double gap_t) {
  auto lam = compute_lambdas(t.g, t.envelope.g0, t.k);
  double g0 = t.envelope.g0;
  int q = t.blocks.q;
  double a = 8 * g0 + std::log(88 * g0 * (q + 1) * (q + 2) / gap_t) / lam.lambda_prime;
  double b = 4 * g0 + std::log(432.0 * (q + 2) / (lam.lambda * gap_t)) / lam.lambda;
  return std::max(a, b);
}

Theorem5Diagnostics theorem5_point(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp) {
  const auto& t = eff.base;
  int q = t.blocks.q;
  double g0 = t.envelope.g0;
  Theorem5Diagnostics d;
  d.tau = eff.tau;
  d.gap_t = sp.gs_t.gap;
  d.gap_eff = sp.gs_eff.gap;
  d.gap_ratio = d.gap_eff / d.gap_t;
  d.overlap_distance = aligned_distance(sp.gs_t.state, sp.gs_eff.state);

  double e1 = sp.effective.eigenvalues(1);
  Matrix low = interval_basis(sp.effective, Interval::at_most(e1 + kDegeneracyTol));
  for (int s = 0; s < t.blocks.count(); ++s) {
    Matrix proj = interval_projector(t.block_spectra[s], Interval::above(eff.tau_s[s]));
    d.kappa += norm_or_zero(apply_block(t, s, proj, low));
  }
  d.e_bot = d.gap_t * (1 - d.kappa) * (1 - d.kappa) - 2 * g0 * d.kappa * (1 + d.kappa) * (q + 1);
  d.precondition_met = eff.tau >= theorem5_tau_threshold(t, d.gap_t);
  d.overlap_bound = 54.0 * (q + 2) / (eff.lambdas.lambda * d.gap_t) * std::exp(-eff.lambdas.lambda * (eff.tau - 4 * g0));
  d.kappa_bound = 11.0 * (q + 2) * std::exp(-eff.lambdas.lambda_prime * (eff.tau - 8 * g0));
  return d;
}

Theorem5Result theorem5_check(const TruncatedHamiltonian& t, const std::vector<double>& tau_grid,
                              const SpectralData* truncated_in) {
  for (size_t i = 1; i < tau_grid.size(); ++i)
    if (!(tau_grid[i] > tau_grid[i - 1])) throw InvalidArgument("tau grid must be ascending");
  Theorem5Result res;
  SpectralData truncated = truncated_in ? *truncated_in : eigendecompose(t.dense());
  for (double tau : tau_grid) {
    auto eff = build_effective(t, tau);
    auto sp = effective_spectra(eff, &truncated);
    auto d = theorem5_point(eff, sp);
    std::string c = ctx({{"tau", tau}});
    res.records.push_back(make_record("thm5.kappa", d.kappa, d.kappa_bound, c));
    if (d.precondition_met) {
      res.records.push_back(make_record("thm5.gap", d.gap_t / 2, d.gap_eff, c));
      res.records.push_back(make_record("thm5.overlap", d.overlap_distance, d.overlap_bound, c));
    }
    if (!res.points.empty())
      res.records.push_back(make_record("thm5.monotone", d.overlap_distance, res.points.back().overlap_distance, c));
    res.points.push_back(d);
  }
  return res;
}

SlopeFit fit_log_decay(const std::vector<double>& x, const std::vector<double>& y, double floor) {
  std::vector<double> xs, ys;
  for (size_t i = 0; i < x.size(); ++i)
    if (y[i] > floor) {
      xs.push_back(x[i]);
      ys.push_back(std::log(y[i]));
    }
  SlopeFit f;
  f.points = static_cast<int>(xs.size());
  if (f.points < 2) return f;
  double n = f.points, mx = 0, my = 0;
  for (int i = 0; i < f.points; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < f.points; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

Report energy_distribution_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp,
                                 const std::vector<double>& dEp_grid, const std::vector<double>& dE_grid) {
  const auto& t = eff.base;
  double g0 = t.envelope.g0;
  double lam = eff.lambdas.lambda, lamp = eff.lambdas.lambda_prime;
  std::vector<Matrix> low, low_eff;
  for (double dE : dE_grid) {
    low.push_back(interval_basis(sp.truncated, Interval::at_most(sp.gs_t.energy + dE)));
    low_eff.push_back(interval_basis(sp.effective, Interval::at_most(sp.gs_eff.energy + dE)));
  }
  Report out;
  for (int s = 0; s < t.blocks.count(); ++s) {
    double es0 = t.block_ground(s);
    for (double dEp : dEp_grid) {
      double Ep = es0 + dEp;
      Matrix proj = interval_projector(t.block_spectra[s], Interval::above(Ep));
      for (size_t j = 0; j < dE_grid.size(); ++j) {
        double dE = dE_grid[j];
        std::string c = ctx({{"s", double(s)}, {"dEp", dEp}, {"dE", dE}});
        double lhs = norm_or_zero(apply_block(t, s, proj, low[j]));
        out.push_back(
            make_record("prop8.energy-dist", lhs, kFilterConstant * std::exp(-lam * (dEp - dE - 4 * g0)), c));
        double lhs_eff = norm_or_zero(apply_block(t, s, proj, low_eff[j]));
        double expo = std::min(Ep, eff.tau_s[s]) - es0 - dE - 4 * g0;
        out.push_back(make_record("prop8.energy-dist-eff", lhs_eff, kFilterConstant * std::exp(-lamp * expo), c));
      }
    }
  }
  return out;
}

Report effective_difference_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp,
                                  const std::vector<double>& dE_grid) {
  const auto& t = eff.base;
  int q = t.blocks.q;
  double g0 = t.envelope.g0, lam = eff.lambdas.lambda;
  std::vector<Matrix> diffs;
  for (int s = 0; s < t.blocks.count(); ++s) diffs.push_back(t.internal[s].matrix - eff.internal_eff[s].matrix);
  Report out;
  for (double dE : dE_grid) {
    Matrix low = interval_basis(sp.truncated, Interval::at_most(sp.gs_t.energy + dE));
    Matrix acc = Matrix::Zero(low.rows(), low.cols());
    for (int s = 0; s < t.blocks.count(); ++s) acc += apply_block(t, s, diffs[s], low);
    double rhs = 27.0 * (q + 2) / lam * std::exp(-lam * (eff.tau - dE - 4 * g0));
    out.push_back(make_record("prop9.diff", norm_or_zero(acc), rhs, ctx({{"tau", eff.tau}, {"dE", dE}})));
  }
  return out;
}

Report exponential_filter_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp, int s, const Matrix& O_s,
                                double E, double E_prime, bool effective) {
  const auto& t = eff.base;
  const Matrix& h = t.internal[s].matrix;
  if (O_s.rows() != h.rows() || O_s.cols() != h.cols()) throw InvalidArgument("O_s does not act on block s");
  double comm = (O_s * h - h * O_s).cwiseAbs().maxCoeff();
  if (comm > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff() * O_s.cwiseAbs().maxCoeff()))
    throw PreconditionFailed("O_s does not commute with h_s");
  const SpectralData& spec = effective ? sp.effective : sp.truncated;
  double lam = effective ? eff.lambdas.lambda_prime : eff.lambdas.lambda;
  Matrix low = interval_basis(spec, Interval::at_most(E));
  Matrix high = interval_basis(spec, Interval::at_least(E_prime));
  double lhs = 0;
  if (low.cols() && high.cols()) lhs = operator_norm(high.adjoint() * apply_block(t, s, O_s, low));
  double rhs = 4 * operator_norm(O_s) * std::exp(-lam * (E_prime - E));
  return {make_record(effective ? "lemma14.filter-eff" : "lemma14.filter", lhs, rhs,
                      ctx({{"s", double(s)}, {"E", E}, {"Ep", E_prime}}))};
}

Report commutator_check(const TruncatedHamiltonian& t) {
  Matrix ht = t.dense();
  Report out;
  double k = t.k;
  for (size_t s = 0; s < t.bonds.size(); ++s) {
    kernels::LocalOp op;
    for (int site : t.bonds[s].support) op.sites.push_back(site - 1);
    op.matrix = &t.bonds[s].matrix;
    Matrix bh = Matrix::Zero(ht.rows(), ht.cols());
    kernels::omp::apply(op, t.lattice.n, t.lattice.d, ht, bh);
    Matrix ic = cplx(0, 1) * (bh.adjoint() - bh);
    ic = (0.5 * (ic + ic.adjoint())).eval();
    double lhs = hermitian_norm(ic);
    out.push_back(make_record("lemma15.commutator", lhs, 6 * t.g * k * (2 * k) * t.bonds[s].norm,
                              ctx({{"bond", double(s)}})));
  }
  return out;
}

}  // namespace agsplab
