#include "agsplab/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace agsplab {

namespace {

Matrix read_table(const std::string& base_dir, const std::string& file, int n) {
  std::filesystem::path p(file);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  std::ifstream in(p);
  if (!in) throw ConfigError(0, "cannot open coupling table " + p.string());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v;
      if (!(in >> v)) throw ConfigError(0, "coupling table " + p.string() + " needs " + std::to_string(n * n) + " entries");
      m(i, j) = v;
    }
  return m;
}

std::vector<double> scaled(std::initializer_list<double> factors, double unit) {
  std::vector<double> out;
  for (double f : factors) out.push_back(f * unit);
  return out;
}

Matrix random_gaussian(std::mt19937_64& rng, long rows, long cols) {
  std::normal_distribution<double> nd;
  Matrix m(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) m(i, j) = cplx(nd(rng), nd(rng));
  return m;
}

Vector from_state_matrix(const Matrix& m) {
  Matrix t = m.transpose();
  return Eigen::Map<const Vector>(t.data(), t.size());
}

std::vector<int> agsp_degrees(const ExperimentConfig& c) { return c.m_grid.empty() ? std::vector<int>{c.m} : c.m_grid; }

}  // namespace

Hamiltonian build_model(const ExperimentConfig& c) {
  const auto& m = c.model;
  checked_power(2, m.n);
  if (m.family == "ising") return build_long_range_ising(m.n, m.alpha, m.J, m.B);
  Matrix A = Matrix::Constant(m.n, m.n, m.A), B = Matrix::Constant(m.n, m.n, m.Bpair);
  if (!m.A_table.empty()) A = read_table(c.base_dir, m.A_table, m.n);
  if (!m.Bpair_table.empty()) B = read_table(c.base_dir, m.Bpair_table, m.n);
  double J = m.Jtilde;
  if (J < 0) {
    J = 0;
    for (int i = 0; i < m.n; ++i)
      for (int j = i + 1; j < m.n; ++j) J = std::max({J, std::abs(A(i, j)), std::abs(B(i, j))});
  }
  std::vector<InteractionTerm> local;
  if (m.mu != 0)
    for (int i = 1; i <= m.n; ++i) local.emplace_back(std::vector<int>{i}, Matrix(m.mu * pauli::Z()));
  return build_long_range_fermion_chain(m.n, m.alpha, A, B, J, local);
}

Vector model_ground_state(const Hamiltonian& h) {
  try {
    return ground_state_by_parity(h).state;
  } catch (const DegenerateGroundState&) {
    throw;
  } catch (const InvalidArgument&) {
    return ground_state(assemble_dense(h)).state;
  }
}

Report verify_all(const ExperimentConfig& c) {
  Report out;
  Hamiltonian h = build_model(c);
  int n = h.lattice.n, d = h.lattice.d;
  DecayEnvelope env = decay_envelope(h);
  double g = local_energy_g(h);
  std::mt19937_64 rng(c.seed);

  std::vector<SamplePair> samples;
  for (auto& p : concatenated_pairs(n))
    if (static_cast<int>(p.lambda0.size()) <= std::min(n, 8)) samples.push_back(std::move(p));
  append(out, verify_assumption1(h, env, samples));

  auto blocks = decompose_blocks(n, c.q, c.l, c.cut);
  int cut = blocks.cut;
  auto t = shift_block_energies(truncate_interactions(h, blocks, env));
  append(out, block_checks(t));

  auto l34 = verify_lemma3_4(h, t);
  out.push_back(make_record("gap≤2g", l34.full.gap, 2 * g, ctx({{"n", double(n)}})));
  append(out, l34.records);

  auto eff = build_effective(t, c.tau);
  auto sp = effective_spectra(eff, &l34.truncated_spectrum);
  append(out, effective_norm_check(eff, sp));

  std::vector<double> taus = c.tau_grid.empty() ? std::vector<double>{c.tau} : c.tau_grid;
  double tau_star = theorem5_tau_threshold(t, sp.gs_t.gap);
  if (tau_star > taus.back()) taus.push_back(tau_star);
  append(out, theorem5_check(t, taus, &l34.truncated_spectrum).records);

  double gap_t = sp.gs_t.gap;
  auto dE = scaled({0, 0.5, 1, 2, 4}, gap_t);
  auto dEp = scaled({0.5, 1, 2, 4, 8}, gap_t);
  append(out, energy_distribution_check(eff, sp, dEp, dE));
  append(out, effective_difference_check(eff, sp, dE));

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int s = 0; s < t.blocks.count(); ++s) {
    const auto& bs = t.block_spectra[s];
    RVector r(bs.eigenvalues.size());
    for (long j = 0; j < r.size(); ++j) r(j) = unit(rng);
    Matrix O = bs.eigenvectors * r.cast<cplx>().asDiagonal() * bs.eigenvectors.adjoint();
    for (int effective = 0; effective < 2; ++effective) {
      double base = effective ? sp.gs_eff.energy : sp.gs_t.energy;
      for (double a : dE)
        for (double b : dEp) append(out, exponential_filter_check(eff, sp, s, O, base + a, base + a + b, effective));
    }
  }
  append(out, commutator_check(t));

  std::vector<int> degrees;
  for (int m = 1; m <= 16; ++m) degrees.push_back(m);
  append(out, chebyshev_lemma11_check(degrees, {-3, -2, -1.5, -1, -0.5, 0, 0.3, 0.5, 1, 1.5, 2, 3}));

  const Vector& target = sp.gs_t.state;
  for (int m : agsp_degrees(c)) {
    auto f = agsp_filter(sp.effective, m);
    f.fixed_state = phase_aligned(target, f.fixed_state);
    auto rep = measure_agsp(f.K, target, f.fixed_state, cut, n, d);
    out.push_back(make_record("agsp.epsilon", rep.epsilon_K, f.cheb_bound,
                              ctx({{"m", double(m)}, {"tau", c.tau}, {"D", double(rep.D_K)}})));
    if (h.lattice.dim <= 256) {
      Matrix k2 = agsp_filter_clenshaw(eff.dense(), f.window, m);
      out.push_back(make_record("agsp.clenshaw", operator_norm(k2 - f.K), 1e-8, ctx({{"m", double(m)}})));
    }
  }

  append(out, schmidt_rank_bound_check(t, &eff, c.sr_m_max));

  std::optional<Vector> base_state;
  int m_boot = std::max(1, agsp_degrees(c).front());
  for (; m_boot <= SequenceLimits{}.m_max; m_boot *= 2) {
    auto f = agsp_filter(sp.effective, m_boot);
    f.fixed_state = phase_aligned(target, f.fixed_state);
    auto rep = measure_agsp(f.K, target, f.fixed_state, cut, n, d);
    rep.m = m_boot;
    auto boot = bootstrap_state(f.K, rep, f.fixed_state, target, cut, n, d);
    if (!boot.precondition_met) continue;
    append(out, boot.records);
    base_state = boot.state;
    break;
  }

  const Vector& psi = l34.full.state;
  SchmidtData sd = schmidt_decompose(psi, cut, n, d);
  long dl = sd.left_vectors.rows(), dr = sd.right_vectors.rows();
  for (long D = 1; D <= std::min(dl, dr); ++D) {
    out.push_back(eckart_young_check(psi, truncate_schmidt(sd, D, false), cut, n, d));
    out.push_back(eckart_young_check(psi, truncate_schmidt(sd, D, true), cut, n, d));
    long k = std::min<long>(D, sd.coefficients.size());
    Matrix U = sd.left_vectors.leftCols(k) + 0.05 * random_gaussian(rng, dl, k);
    Matrix V = sd.right_vectors.leftCols(k) + 0.05 * random_gaussian(rng, dr, k);
    Matrix m = U * sd.coefficients.head(k).cast<cplx>().asDiagonal() * V.transpose();
    Vector pert = from_state_matrix(m);
    out.push_back(eckart_young_check(psi, pert / pert.norm(), cut, n, d));
  }

  for (long D : c.bond_dims) out.push_back(claim7_check(psi, mps_compress(psi, n, D, d), D));

  double S = entropy(sd), S2 = renyi2(sd);
  out.push_back(make_record("s2≤s", S2, S, ctx({{"cut", double(cut)}})));
  double S_rho = entropy_of_density(reduced_density_left(psi, cut, n, d));
  out.push_back(make_record("entropy.crosscheck", std::abs(S - S_rho), 1e-9, ctx({{"cut", double(cut)}}), 0.0));

  std::string pc = ctx({{"cut", double(cut)}});
  if (!base_state) {
    out.push_back(make_record("prop3.entropy-bound", S, std::numeric_limits<double>::quiet_NaN(), pc + ";base=none"));
    return out;
  }
  try {
    SequenceParams start{m_boot, c.l, c.tau};
    SequenceLimits limits;
    limits.p_max = c.p_max;
    auto seq = agsp_sequence(h, psi, *base_state, c.q, cut, start, limits);
    append(out, seq.records);
    out.push_back(make_record("prop3.entropy-bound", S, seq.bound,
                              pc + ";" + ctx({{"nu0", seq.nu0}, {"D_terminal", double(seq.D_terminal)}})));
  } catch (const Error&) {
    out.push_back(make_record("prop3.entropy-bound", S, std::numeric_limits<double>::quiet_NaN(),
                              pc + ";sequence=failed"));
  }
  return out;
}

EntropyRow entropy_row(const ExperimentConfig& c) {
  Hamiltonian h = build_model(c);
  int n = h.lattice.n, d = h.lattice.d;
  EntropyRow row;
  row.n = n;
  row.cut = c.cut.value_or(n / 2);
  Vector psi = model_ground_state(h);
  SchmidtData sd = schmidt_decompose(psi, row.cut, n, d);
  row.S = entropy(sd);
  row.S2 = renyi2(sd);
  row.schmidt_rank = schmidt_rank(sd);
  for (long D : c.bond_dims) row.err2.push_back({D, (psi - mps_compress(psi, n, D, d).contract()).squaredNorm()});
  return row;
}

const std::map<std::string, std::string>& bound_registry() {
  static const std::map<std::string, std::string> reg{
      {"assumption1", "||V_{X,Y}|| <= g0 r^(-alpha_bar) for blocks X, Y at distance r"},
      {"gap≤2g", "Delta <= 2g"},
      {"lemma12.shift", "|E_{s,0}| <= g0 (q+1)/(q+2) after the block energy shift"},
      {"lemma3.norm", "||H - H_t|| <= g0 q l^(-alpha_bar)"},
      {"weyl", "|E_j - E_{t,j}| <= ||dH_t|| for all j"},
      {"lemma3.gap", "Delta_t >= Delta - 2 ||dH_t||"},
      {"lemma4.overlap", "|| |0> - |0_t> || <= ||dH_t|| / (Delta - 4 ||dH_t||) when 4 ||dH_t|| < Delta"},
      {"effnorm", "||H~_t|| <= tau (q+2) + 2 g0 (q+1)"},
      {"lemma13.gap", "Delta~_t <= 2g + 2g0"},
      {"lemma13.gap-g0", "Delta~_t <= 4 g0"},
      {"thm5.gap", "Delta~_t >= Delta_t / 2 for tau above the threshold"},
      {"thm5.overlap", "|| |0~_t> - |0_t> || <= 54 (q+2)/(lambda Delta_t) exp(-lambda (tau - 4 g0))"},
      {"thm5.kappa", "kappa <= 11 (q+2) exp(-lambda' (tau - 8 g0))"},
      {"thm5.monotone", "|| |0~_t> - |0_t> || is non-increasing along the tau grid"},
      {"prop8.energy-dist",
       "||Pi^(s)_{>E'} Pi_{<=E}|| <= 4 e^(3/2)/(e-1) exp(-lambda (E' - E_{s,0} - (E - E_{t,0}) - 4 g0))"},
      {"prop8.energy-dist-eff",
       "||Pi^(s)_{>E'} Pi~_{<=E}|| <= 4 e^(3/2)/(e-1) exp(-lambda' (min(E', tau_s) - E_{s,0} - (E - E~_{t,0}) - 4 g0))"},
      {"prop9.diff", "||(H_t - H~_t) Pi_{<=E}|| <= 27 (q+2)/lambda exp(-lambda (tau - (E - E_{t,0}) - 4 g0))"},
      {"lemma14.filter", "||Pi_{>=E'} O_s Pi_{<=E}|| <= 4 ||O_s|| exp(-lambda (E' - E)) for [O_s, h_s] = 0"},
      {"lemma14.filter-eff", "||Pi~_{>=E'} O_s Pi~_{<=E}|| <= 4 ||O_s|| exp(-lambda' (E' - E)) for [O_s, h_s] = 0"},
      {"lemma15.commutator", "||[H_t, h_{s,s+1}]|| <= 6 g k (2k) ||h_{s,s+1}||"},
      {"cheb.lemma11", "|T_m(x)| <= 1 on [-1,1]; e^(2m sqrt((|x|-1)/(|x|+1)))/2 <= |T_m(x)| <= (2|x|)^m/2 outside"},
      {"agsp.epsilon", "eps_K <= 2 exp(-2m sqrt(Delta~_t / ||H~_t||))"},
      {"agsp.clenshaw", "Clenshaw evaluation of the filter matches its spectral evaluation"},
      {"sr.lemma8", "SR(H_t^m) <= [2 + (2dl)^k]^m"},
      {"sr.prop4",
       "SR(H_t^m) <= d^(ql) (q+m+1)^(q+1) [e (q+1)^2 (2dl)^k]^(m/(q+1)); "
       "d^(2ql) [e (q+1)^2 (2dl)^k]^(m/(q+1)) when (q+m+1)^(q+1) <= d^(ql)"},
      {"bootstrap.mu1", "mu_1 >= 1/sqrt(2 D_K) when eps_K^2 D_K <= 1/2"},
      {"bootstrap.rank", "SR(K |P_1>) <= D_K"},
      {"prop2.distance", "|| |psi> - |0_t> || <= eps_K sqrt(2 D_K) + delta_K"},
      {"eckart-young", "sum_{j > D} mu_j^2 <= || |psi> - |psi'> ||^2 for SR(psi') = D"},
      {"claim7.mps", "|| |psi> - |psi_D> ||^2 <= 2 sum_i delta_i"},
      {"s2≤s", "S_2 <= S"},
      {"entropy.crosscheck", "Schmidt and reduced-density entropies agree to 1e-9"},
      {"prop3.sequence", "|| K_p e^(-i theta_p) |phi> / ||K_p |phi>|| - |0> || <= gamma_p"},
      {"prop3.entropy-bound",
       "S <= ln D_phi + ln(3 D_1) + sum_p gamma_p^2 ln(3 D_{p+1} / gamma_p^2)"},
  };
  return reg;
}

namespace {

bool holds_with(const BoundRecord& r, double tol) { return r.lhs <= r.rhs + tol; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  return f;
}

}  // namespace

void write_results_csv(const std::string& path, const std::vector<PointOutput>& points, double tolerance) {
  auto f = open_out(path);
  f << "bound_id,lhs,rhs,holds";
  if (!points.empty())
    for (const auto& [key, _] : points.front().point.swept) f << ',' << csv_field(key);
  f << ",context\n";
  for (const auto& p : points)
    for (const auto& r : p.records) {
      f << csv_field(r.bound_id) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
        << (holds_with(r, tolerance) ? "true" : "false");
      for (const auto& [_, value] : p.point.swept) f << ',' << csv_field(value);
      f << ',' << csv_field(r.context) << '\n';
    }
}

void write_summary(const std::string& path, const std::vector<PointOutput>& points, double tolerance) {
  const auto& reg = bound_registry();
  std::map<std::string, std::pair<long, long>> counts;
  for (const auto& p : points)
    for (const auto& r : p.records) {
      if (!reg.count(r.bound_id)) throw Error("bound id missing from the registry: " + r.bound_id);
      auto& c = counts[r.bound_id];
      ++c.second;
      if (holds_with(r, tolerance)) ++c.first;
    }
  auto f = open_out(path);
  long failed = 0;
  for (const auto& [id, c] : counts) {
    bool ok = c.first == c.second;
    if (!ok) ++failed;
    f << (ok ? "PASS " : "FAIL ") << id << ' ' << c.first << '/' << c.second << "  " << reg.at(id) << '\n';
  }
  f << "\n" << counts.size() - failed << " of " << counts.size() << " bound ids pass (tolerance " << fmt(tolerance)
    << ")\n";
}

void write_entropy_csv(const std::string& path, const std::vector<PointOutput>& points) {
  auto f = open_out(path);
  std::vector<long> dims;
  for (const auto& p : points)
    if (p.entropy) {
      for (const auto& [D, _] : p.entropy->err2) dims.push_back(D);
      break;
    }
  f << "n,cut,S_nat,S2_nat,schmidt_rank";
  for (long D : dims) f << ",err2_D" << D;
  f << '\n';
  for (const auto& p : points) {
    if (!p.entropy) continue;
    const auto& e = *p.entropy;
    f << e.n << ',' << e.cut << ',' << fmt(e.S) << ',' << fmt(e.S2) << ',' << e.schmidt_rank;
    for (const auto& [_, err] : e.err2) f << ',' << fmt(err);
    f << '\n';
  }
}

int run_command(const std::string& command, const std::string& config_path, const RunOptions& opts) {
  static const std::set<std::string> commands{"run", "verify", "entropy", "sweep"};
  if (!commands.count(command)) {
    std::cerr << "error: unknown command " << command << '\n';
    return 2;
  }
  try {
    RawConfig raw = load_config(config_path);
    if (command == "sweep" && raw.sweep.empty()) throw ConfigError(0, "sweep needs a [sweep] section");
    auto grid = expand_sweep(raw);
    for (auto& gp : grid) {
      if (opts.seed) gp.config.seed = *opts.seed;
      if (opts.tolerance) gp.config.tolerance = *opts.tolerance;
      if (opts.out) gp.config.out_dir = *opts.out;
    }
    bool want_verify = command != "entropy";
    bool want_entropy = command != "verify";

    std::vector<PointOutput> results(grid.size());
    std::vector<std::string> errors(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next++) < grid.size();) {
        results[i].point = grid[i];
        try {
          if (want_verify) results[i].records = verify_all(grid[i].config);
          if (want_entropy) results[i].entropy = entropy_row(grid[i].config);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(grid.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (size_t i = 0; i < grid.size(); ++i)
      if (!errors[i].empty()) {
        std::cerr << "error: " << errors[i];
        for (const auto& [k, v] : grid[i].swept) std::cerr << " [" << k << '=' << v << ']';
        std::cerr << '\n';
        return 2;
      }

    const auto& first = grid.front().config;
    std::filesystem::create_directories(first.out_dir);
    std::filesystem::path dir(first.out_dir);
    double tol = first.tolerance;
    bool ok = true;
    if (want_verify) {
      write_results_csv((dir / "results.csv").string(), results, tol);
      write_summary((dir / "summary.txt").string(), results, tol);
      long total = 0, failed = 0;
      for (const auto& p : results)
        for (const auto& r : p.records) {
          ++total;
          if (!holds_with(r, tol)) ++failed;
        }
      ok = failed == 0;
      std::cout << total - failed << '/' << total << " records hold\n";
    }
    if (want_entropy) write_entropy_csv((dir / "entropy.csv").string(), results);
    std::cout << "wrote " << dir.string() << '\n';
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace agsplab
