#include "agsplab/entropy_bound.hpp"

#include <cmath>

namespace agsplab {

double agsp_entropy_bound(long D_phi, const std::vector<double>& gammas, const std::vector<long>& ranks) {
  if (ranks.size() != gammas.size() + 1) throw InvalidArgument("need one more rank than gammas");
  if (D_phi < 1) throw InvalidArgument("D_phi must be positive");
  for (double g : gammas)
    if (g < 0 || g > 1) throw InvalidArgument("gamma_p must lie in [0, 1]");
  double bound = std::log(double(D_phi)) + std::log(3.0 * ranks[0]);
  for (size_t p = 0; p < gammas.size(); ++p) {
    double g2 = gammas[p] * gammas[p];
    if (g2 > 0) bound += g2 * std::log(3.0 * ranks[p + 1] / g2);
  }
  return bound;
}

namespace {

struct Stage {
  SequenceParams params;
  AgspFilter filter;
  double epsilon = 0;
  double delta = 0;
  long D = 0;
  double tau_ceiling = 0;
};

bool valid_l(int n, int q, int l, int cut) {
  int left = cut - q * l / 2;
  return q * l <= n && left >= 0 && left <= n - q * l;
}

Stage build_stage(const Hamiltonian& h, const Vector& target, int q, int cut, const SequenceParams& p) {
  Stage st;
  st.params = p;
  auto blocks = decompose_blocks(h.lattice.n, q, p.l, cut);
  auto t = shift_block_energies(truncate_interactions(h, blocks));
  for (const auto& s : t.block_spectra)
    st.tau_ceiling = std::max(st.tau_ceiling, s.eigenvalues(s.eigenvalues.size() - 1) - s.eigenvalues(0));
  auto eff = build_effective(t, p.tau);
  st.filter = agsp_filter(eigendecompose(eff.dense()), p.m);
  st.filter.fixed_state = phase_aligned(target, st.filter.fixed_state);
  auto rep = measure_agsp(st.filter.K, target, st.filter.fixed_state, cut, h.lattice.n, h.lattice.d);
  st.epsilon = rep.epsilon_K;
  st.delta = rep.delta_K;
  st.D = rep.D_K;
  return st;
}

}  // namespace

AgspSequence agsp_sequence(const Hamiltonian& h, const Vector& target, const Vector& phi_in, int q, int cut,
                           SequenceParams start, const SequenceLimits& limits) {
  int n = h.lattice.n, d = h.lattice.d;
  AgspSequence seq;
  Vector phi = phase_aligned(target, phi_in / phi_in.norm());
  seq.nu0 = (target - phi).norm();
  if (seq.nu0 > 0.5) throw PreconditionFailed("base state is farther than 1/2 from the ground state");
  seq.D_phi = schmidt_rank(phi, cut, n, d);

  int budget = limits.budget;
  SequenceParams cur = start;
  Stage st = build_stage(h, target, q, cut, cur);
  std::vector<double> gammas;
  std::vector<long> ranks;
  for (int p = 1; p <= limits.p_max; ++p) {
    int escalations = 0;
    double gamma = 0;
    for (;;) {
      double denom = 1 - seq.nu0 - st.delta;
      double filter_part = denom > 0 ? st.epsilon / denom : std::numeric_limits<double>::infinity();
      gamma = filter_part + st.delta;
      if (gamma <= 1.0 / p) break;
      if (budget-- <= 0) throw Error("escalation budget exhausted before gamma_p <= 1/p");
      ++escalations;
      SequenceParams next = cur;
      bool can_tau = cur.tau < st.tau_ceiling;
      bool can_l = valid_l(n, q, cur.l + 1, cut);
      if (filter_part > st.delta && cur.m * 2 <= limits.m_max)
        next.m = cur.m * 2;
      else if (can_tau)
        next.tau = std::min(2 * cur.tau, st.tau_ceiling);
      else if (can_l)
        next.l = cur.l + 1;
      else if (cur.m * 2 <= limits.m_max)
        next.m = cur.m * 2;
      else
        throw Error("escalation reached its parameter limits before gamma_p <= 1/p");
      cur = next;
      st = build_stage(h, target, q, cut, cur);
    }

    SequenceStep step;
    step.p = p;
    step.params = cur;
    step.epsilon = st.epsilon;
    step.delta = st.delta;
    step.gamma = gamma;
    step.D = st.D;
    step.escalations = escalations;
    const Vector& fixed = st.filter.fixed_state;
    cplx overlap = fixed.dot(phi);
    cplx rot = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap) : cplx(1, 0);
    Vector kphi = st.filter.K * phi;
    step.measured_distance = (rot * kphi / kphi.norm() - target).norm();
    seq.records.push_back(make_record("prop3.sequence", step.measured_distance, gamma,
                                      ctx({{"p", double(p)}, {"m", double(cur.m)}, {"l", double(cur.l)}, {"tau", cur.tau}})));
    gammas.push_back(gamma);
    ranks.push_back(st.D);
    seq.steps.push_back(step);
  }
  long target_rank = schmidt_rank(target, cut, n, d);
  seq.D_terminal = target_rank * target_rank;
  ranks.push_back(seq.D_terminal);
  seq.bound = agsp_entropy_bound(seq.D_phi, gammas, ranks);
  return seq;
}

}  // namespace agsplab
