#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "agsplab/experiment.hpp"
#include "oracles.hpp"

using namespace agsplab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

void require_all(Outcome& o, const Report& r, const std::string& what) {
  for (const auto& rec : r)
    if (!rec.holds) {
      std::ostringstream ss;
      ss << what << " " << rec.bound_id << " lhs=" << rec.lhs << " rhs=" << rec.rhs << " " << rec.context;
      require(o, false, ss.str());
    }
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Reference {
  Hamiltonian h = build_long_range_ising(10, 3.0, 1.0, 2.0);
  TruncatedHamiltonian t = shift_block_energies(truncate_interactions(h, decompose_blocks(10, 2, 2)));
  Lemma34Result l34 = verify_lemma3_4(h, t);

  // largest block bandwidth: above it the cutoff clamps nothing
  double tau_top() const {
    double w = 0;
    for (const auto& bs : t.block_spectra) w = std::max(w, bs.eigenvalues.maxCoeff() - bs.eigenvalues(0));
    return w;
  }
};

Reference& reference() {
  static Reference r;
  return r;
}

Outcome chebyshev_filter() {
  auto& r = reference();
  double tau = r.tau_top();
  auto eff = build_effective(r.t, tau);
  auto sp = effective_spectra(eff, &r.l34.truncated_spectrum);
  Outcome o;
  std::string eps;
  for (int m : {2, 4, 6, 8, 12, 16}) {
    auto f = agsp_filter(sp.effective, m);
    auto rep = measure_agsp(f.K, sp.gs_t.state, phase_aligned(sp.gs_t.state, f.fixed_state), r.t.blocks.cut, 10);
    require(o, rep.epsilon_K <= f.cheb_bound + 1e-9, fmt("m=%g eps=%g bound=%g", m, rep.epsilon_K, f.cheb_bound));
    eps += fmt(" m%g:%.2e/%.2e", m, rep.epsilon_K, f.cheb_bound);
  }
  o.detail = fmt("tau=%.3f", tau) + eps + (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome truncation_suite() {
  Outcome o;
  int records = 0, overlaps = 0;
  for (int n : {8, 10, 12}) {
    auto h = build_long_range_ising(n, 3.0, 1.0, 2.0);
    for (int l : {1, 2, 3}) {
      auto t = shift_block_energies(truncate_interactions(h, decompose_blocks(n, 2, l)));
      auto res = verify_lemma3_4(h, t);
      require_all(o, res.records, fmt("n=%g l=%g", n, l));
      require(o, res.overlap_checked == (4 * res.dh_norm < res.full.gap), fmt("overlap coverage n=%g l=%g", n, l));
      records += res.records.size();
      overlaps += res.overlap_checked;
    }
  }
  if (o.pass) o.detail = fmt("%g records, overlap bound applicable on %g of 9 instances", records, overlaps);
  return o;
}

Outcome theorem5_decay() {
  auto& r = reference();
  double top = r.tau_top();
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(top * k / 10);
  auto res = theorem5_check(r.t, grid, &r.l34.truncated_spectrum);
  Outcome o;
  require_all(o, res.records, "");
  std::vector<double> x, y;
  int met = 0;
  for (const auto& p : res.points) {
    x.push_back(p.tau);
    y.push_back(p.overlap_distance);
    met += p.precondition_met;
  }
  auto fit = fit_log_decay(x, y);
  double star = theorem5_tau_threshold(r.t, r.l34.truncated.gap);
  auto at_star = theorem5_check(r.t, {star}, &r.l34.truncated_spectrum);
  require_all(o, at_star.records, "tau*");
  met += at_star.points[0].precondition_met;
  require(o, fit.points >= 8, fmt("only %g unsaturated points", fit.points));
  require(o, fit.slope < 0, fmt("slope %g", fit.slope));
  require(o, fit.r_squared >= 0.9, fmt("R^2 %g", fit.r_squared));
  if (o.pass)
    o.detail = fmt("slope=%.4f R^2=%.4f points=%g", fit.slope, fit.r_squared, fit.points) +
               fmt(" inequality exercised at %g points incl. tau*=%.1f", met, star);
  return o;
}

Outcome filter_machinery() {
  auto& r = reference();
  double tau = 0.5 * r.tau_top();
  auto eff = build_effective(r.t, tau);
  auto sp = effective_spectra(eff, &r.l34.truncated_spectrum);
  double gap = sp.gs_t.gap;
  std::vector<double> dE, dEp;
  for (double f : {0.0, 0.5, 1.0, 2.0, 4.0}) dE.push_back(f * gap);
  for (double f : {0.5, 1.0, 2.0, 4.0, 8.0}) dEp.push_back(f * gap);
  Outcome o;
  Report all;
  auto add = [&](const Report& rep) { all.insert(all.end(), rep.begin(), rep.end()); };
  add(energy_distribution_check(eff, sp, dEp, dE));
  add(effective_difference_check(eff, sp, dE));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int s = 0; s < r.t.blocks.count(); ++s) {
    const auto& bs = r.t.block_spectra[s];
    RVector w(bs.eigenvalues.size());
    for (long j = 0; j < w.size(); ++j) w(j) = unit(rng);
    Matrix O = bs.eigenvectors * w.cast<cplx>().asDiagonal() * bs.eigenvectors.adjoint();
    for (bool e : {false, true}) {
      double base = e ? sp.gs_eff.energy : sp.gs_t.energy;
      for (double a : dE)
        for (double b : dEp) add(exponential_filter_check(eff, sp, s, O, base + a, base + a + b, e));
    }
  }
  auto comm = commutator_check(r.t);
  require(o, comm.size() == r.t.bonds.size(), "one commutator record per bond");
  add(comm);
  require_all(o, all, "");
  std::map<std::string, int> count;
  for (const auto& rec : all) ++count[rec.bound_id];
  if (o.pass) {
    o.detail = fmt("tau=%.3f", tau);
    for (const auto& [id, k] : count) o.detail += " " + id + "=" + std::to_string(k);
  }
  return o;
}

struct Boot {
  int m = 0;
  AgspReport report;
  BootstrapResult result;
};

std::optional<Boot> escalate_bootstrap(const EffectiveSpectra& sp, int cut) {
  for (int m = 2; m <= SequenceLimits{}.m_max; m *= 2) {
    auto f = agsp_filter(sp.effective, m);
    f.fixed_state = phase_aligned(sp.gs_t.state, f.fixed_state);
    auto rep = measure_agsp(f.K, sp.gs_t.state, f.fixed_state, cut, 10);
    rep.m = m;
    auto b = bootstrap_state(f.K, rep, f.fixed_state, sp.gs_t.state, cut, 10);
    if (b.precondition_met) return Boot{m, rep, b};
  }
  return std::nullopt;
}

Outcome bootstrapping() {
  auto& r = reference();
  auto eff = build_effective(r.t, r.tau_top());
  auto sp = effective_spectra(eff, &r.l34.truncated_spectrum);
  Outcome o;
  auto boot = escalate_bootstrap(sp, r.t.blocks.cut);
  require(o, boot.has_value(), "eps^2 D <= 1/2 never reached");
  if (!boot) return o;
  const auto& b = boot->result;
  require_all(o, b.records, "");
  double mu_floor = 1 / std::sqrt(2.0 * boot->report.D_K);
  require(o, b.mu1 >= mu_floor, fmt("mu1 %g < %g", b.mu1, mu_floor));
  double dist_bound = boot->report.epsilon_K * std::sqrt(2.0 * boot->report.D_K) + boot->report.delta_K;
  require(o, b.distance <= dist_bound + 1e-9, fmt("distance %g > %g", b.distance, dist_bound));
  if (o.pass)
    o.detail = fmt("m=%g D_K=%g", boot->m, boot->report.D_K) + fmt(" mu1=%.4f >= %.4f", b.mu1, mu_floor) +
               fmt(" distance=%.3e <= %.3e", b.distance, dist_bound);
  return o;
}

Outcome schmidt_rank_bounds() {
  auto h = build_long_range_ising(8, 3.0, 1.0, 2.0);
  Outcome o;
  std::map<std::string, int> count;
  for (int l : {1, 2, 3}) {
    auto t = shift_block_energies(truncate_interactions(h, decompose_blocks(8, 2, l)));
    auto eff = build_effective(t, 6.0);
    auto rep = schmidt_rank_bound_check(t, &eff, 3);
    require_all(o, rep, fmt("l=%g", l));
    for (const auto& rec : rep) ++count[rec.bound_id];
  }
  require(o, count["sr.lemma8"] > 0, "no sr.lemma8 records");
  if (o.pass)
    for (const auto& [id, k] : count) o.detail += (o.detail.empty() ? "" : " ") + id + "=" + std::to_string(k);
  return o;
}

Outcome compression_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  long ey = 0, s2 = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Vector psi = oracle::random_state(rng, 64);
    for (int cut = 1; cut < 6; ++cut) {
      auto sd = schmidt_decompose(psi, cut, 6);
      long dl = 1L << cut, dr = 1L << (6 - cut);
      for (long D = 1; D <= std::min(dl, dr); ++D) {
        Vector rank_d = Vector::Zero(64);
        for (long k = 0; k < D; ++k)
          rank_d += product_state(oracle::random_state(rng, dl), oracle::random_state(rng, dr));
        for (const Vector& cand : {truncate_schmidt(sd, D, false), truncate_schmidt(sd, D, true), Vector(rank_d / rank_d.norm())}) {
          auto rec = eckart_young_check(psi, cand, cut, 6, 2, 1e-12);
          require(o, rec.holds, fmt("eckart-young trial %g cut %g D %g", trial, cut, D));
          ++ey;
        }
      }
      require(o, renyi2(sd) <= entropy(sd) + 1e-12, fmt("s2<=s trial %g cut %g", trial, cut));
      ++s2;
    }
  }
  Vector gs = reference().l34.full.state;
  for (long D : {1, 2, 4, 8, 16}) {
    auto rec = claim7_check(gs, mps_compress(gs, 10, D), D);
    require(o, rec.holds, fmt("claim7 D=%g lhs=%g rhs=%g", D, rec.lhs, rec.rhs));
  }
  for (int cut = 1; cut < 10; ++cut) {
    auto sd = schmidt_decompose(gs, cut, 10);
    require(o, renyi2(sd) <= entropy(sd) + 1e-12, fmt("s2<=s ground state cut %g", cut));
    ++s2;
  }
  if (o.pass) o.detail = fmt("%g eckart-young checks, 5 claim7 checks, %g s2<=s checks", ey, s2);
  return o;
}

Outcome area_law() {
  const std::map<int, double> frozen{
      {6, 0.0753636}, {8, 0.0752988}, {10, 0.0753183}, {12, 0.0753158}, {14, 0.0753169}};
  Outcome o;
  std::map<int, double> S;
  for (int n : {6, 8, 10, 12, 14}) {
    Vector psi = model_ground_state(build_long_range_ising(n, 3.0, 1.0, 2.0));
    S[n] = entropy(schmidt_decompose(psi, n / 2, n));
    require(o, std::abs(S[n] - frozen.at(n)) < 1e-6, fmt("S(%g)=%.8f drifted from fixture %.8f", n, S[n], frozen.at(n)));
  }
  double late = std::abs(S[14] - S[12]), early = std::abs(S[8] - S[6]);
  require(o, late < early, fmt("|S14-S12|=%g not below |S8-S6|=%g", late, early));
  double envelope = std::log(2.0) + frozen.at(6), top = 0;
  for (const auto& [n, s] : S) top = std::max(top, s);
  require(o, top < envelope, fmt("max S %g >= %g", top, envelope));
  std::string row;
  for (const auto& [n, s] : S) row += fmt(" S%g=%.7f", n, s);
  return {o.pass, row.substr(1) + fmt(" |S14-S12|=%.2e |S8-S6|=%.2e", late, early) + (o.pass ? "" : " " + o.detail)};
}

Outcome entropy_bound() {
  auto& r = reference();
  auto eff = build_effective(r.t, r.tau_top());
  auto sp = effective_spectra(eff, &r.l34.truncated_spectrum);
  Outcome o;
  int cut = r.t.blocks.cut;
  auto boot = escalate_bootstrap(sp, cut);
  require(o, boot.has_value(), "no bootstrapped base state");
  if (!boot) return o;
  const Vector& psi = r.l34.full.state;
  auto seq = agsp_sequence(r.h, psi, boot->result.state, 2, cut, {boot->m, 2, r.tau_top()});
  require_all(o, seq.records, "");
  double S = entropy(schmidt_decompose(psi, cut, 10));
  require(o, S <= seq.bound, fmt("S=%g above bound %g", S, seq.bound));
  if (o.pass)
    o.detail = fmt("bound=%.4f >= S=%.7f", seq.bound, S) + fmt(" over %g steps, D_terminal=%g", seq.steps.size(), seq.D_terminal);
  return o;
}

}  // namespace

int main(int, char** argv) {
  ensure_reliable_blas(argv);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 chebyshev-filter", chebyshev_filter},   {"2 truncation-suite", truncation_suite},
      {"3 tau-decay", theorem5_decay},            {"4 filter-machinery", filter_machinery},
      {"5 bootstrapping", bootstrapping},         {"6 schmidt-rank-bounds", schmidt_rank_bounds},
      {"7 compression-suite", compression_suite}, {"8 area-law-trend", area_law},
      {"9 entropy-bound", entropy_bound}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
