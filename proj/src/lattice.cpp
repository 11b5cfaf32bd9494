#include "agsplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "agsplab/spectral.hpp"
#include "lapack_wrap.hpp"

namespace agsplab {

LatticeSpec::LatticeSpec(int n_, int d_) : n(n_), d(d_) {
  if (n < 1) throw InvalidArgument("lattice needs at least one site");
  if (d < 2) throw InvalidArgument("local dimension must be at least 2");
  dim = checked_power(d, n);
}

InteractionTerm::InteractionTerm(std::vector<int> support_, Matrix matrix_, int d) : support(std::move(support_)) {
  for (size_t i = 1; i < support.size(); ++i)
    if (support[i] <= support[i - 1]) throw InvalidArgument("term support must be strictly ascending");
  long dim = 1;
  for (size_t i = 0; i < support.size(); ++i) dim *= d;
  if (matrix_.rows() != dim || matrix_.cols() != dim) throw InvalidArgument("term matrix does not match support");
  if (hermiticity_defect(matrix_) > kHermitianTol) throw InvalidArgument("term matrix is not Hermitian");
  matrix = std::move(matrix_);
  norm = hermitian_norm(matrix);
}

namespace pauli {
Matrix I() { return Matrix::Identity(2, 2); }
Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix Y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Hamiltonian make_hamiltonian(const LatticeSpec& lattice, std::vector<InteractionTerm> terms, int k) {
  Hamiltonian h;
  h.lattice = lattice;
  int widest = 0;
  for (const auto& t : terms) {
    for (int s : t.support)
      if (s < 1 || s > lattice.n) throw InvalidArgument("term support outside the lattice");
    widest = std::max<int>(widest, static_cast<int>(t.support.size()));
  }
  if (k > 0 && widest > k) throw InvalidArgument("term exceeds the locality k");
  h.k = k > 0 ? k : widest;
  h.terms = std::move(terms);
  return h;
}

Hamiltonian build_long_range_ising(int n, double alpha, double J, double B) {
  if (!(alpha > 0)) throw InvalidArgument("alpha must be positive");
  LatticeSpec lat(n, 2);
  std::vector<InteractionTerm> terms;
  Matrix xx = kron(pauli::X(), pauli::X());
  if (J != 0.0)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) terms.emplace_back(std::vector<int>{i, j}, (J / std::pow(j - i, alpha)) * xx);
  if (B != 0.0)
    for (int i = 1; i <= n; ++i) terms.emplace_back(std::vector<int>{i}, B * pauli::Z());
  Hamiltonian h = make_hamiltonian(lat, std::move(terms), 2);
  h.metadata = FamilyMetadata{"ising", alpha, J, std::abs(B)};
  return h;
}

namespace {

// annihilator at window position p: (prod_{q<p} Z_q) sigma^+_p
Matrix window_annihilator(int width, int p) {
  Matrix plus = Matrix::Zero(2, 2);
  plus(0, 1) = 1;
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < width; ++q) out = kron(out, q < p ? pauli::Z() : q == p ? plus : pauli::I());
  return out;
}

}  // namespace

Hamiltonian build_long_range_fermion_chain(int n, double alpha, const Matrix& A, const Matrix& B, double J_tilde,
                                           const std::vector<InteractionTerm>& local_terms) {
  if (!(alpha > 0)) throw InvalidArgument("alpha must be positive");
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != n)
    throw InvalidArgument("coupling tables must be n x n");
  LatticeSpec lat(n, 2);
  std::vector<InteractionTerm> terms;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      cplx a = A(i - 1, j - 1), b = B(i - 1, j - 1);
      if (std::abs(a) > J_tilde + 1e-15 || std::abs(b) > J_tilde + 1e-15)
        throw InvalidArgument("coupling magnitude exceeds J_tilde");
      if (a == cplx(0.0, 0.0) && b == cplx(0.0, 0.0)) continue;
      int width = j - i + 1;
      Matrix ai = window_annihilator(width, 0);
      Matrix aj = window_annihilator(width, width - 1);
      Matrix op = a * ai * aj.adjoint() + b * ai * aj;
      op = (op + op.adjoint()).eval() / std::pow(j - i, alpha);
      std::vector<int> support(width);
      for (int s = 0; s < width; ++s) support[s] = i + s;
      terms.emplace_back(std::move(support), std::move(op));
    }
  double field = 0;
  for (const auto& t : local_terms) {
    terms.push_back(t);
    if (t.support.size() == 1) field = std::max(field, t.norm);
  }
  Hamiltonian h = make_hamiltonian(lat, std::move(terms));
  h.metadata = FamilyMetadata{"fermion", alpha, J_tilde, field};
  return h;
}

std::vector<kernels::LocalOp> local_ops(const std::vector<InteractionTerm>& terms) {
  std::vector<kernels::LocalOp> ops;
  ops.reserve(terms.size());
  for (const auto& t : terms) {
    kernels::LocalOp op;
    for (int s : t.support) op.sites.push_back(s - 1);
    op.matrix = &t.matrix;
    ops.push_back(std::move(op));
  }
  return ops;
}

Matrix assemble_terms(const std::vector<InteractionTerm>& terms, int n, int d) {
  checked_power(d, n);
  return kernels::omp::assemble(local_ops(terms), n, d);
}

Matrix assemble_dense(const Hamiltonian& h) { return assemble_terms(h.terms, h.lattice.n, h.lattice.d); }

BlockInteraction block_interaction(const Hamiltonian& h, const std::vector<int>& X, const std::vector<int>& Y,
                                   const std::vector<int>& lambda0) {
  std::set<int> xs(X.begin(), X.end()), ys(Y.begin(), Y.end()), ls(lambda0.begin(), lambda0.end());
  for (int s : xs)
    if (ys.count(s)) throw InvalidArgument("X and Y overlap");
  for (int s : xs)
    if (!ls.count(s)) throw InvalidArgument("X is not contained in Lambda0");
  for (int s : ys)
    if (!ls.count(s)) throw InvalidArgument("Y is not contained in Lambda0");

  BlockInteraction out;
  out.lambda0.assign(ls.begin(), ls.end());
  std::vector<int> position(h.lattice.n + 1, -1);
  for (size_t p = 0; p < out.lambda0.size(); ++p) position[out.lambda0[p]] = static_cast<int>(p);

  std::vector<InteractionTerm> local;
  for (const auto& t : h.terms) {
    bool inside = true, hits_x = false, hits_y = false;
    for (int s : t.support) {
      inside = inside && ls.count(s);
      hits_x = hits_x || xs.count(s);
      hits_y = hits_y || ys.count(s);
    }
    if (!(inside && hits_x && hits_y)) continue;
    out.terms.push_back(t);
    InteractionTerm moved = t;
    for (int& s : moved.support) s = position[s] + 1;
    local.push_back(std::move(moved));
  }
  int width = static_cast<int>(out.lambda0.size());
  out.op = assemble_terms(local, width, h.lattice.d);
  out.norm = out.terms.empty() ? 0.0 : hermitian_norm(out.op);
  return out;
}

DecayEnvelope decay_envelope(const Hamiltonian& h) {
  if (!h.metadata) throw InvalidArgument("decay envelope needs family metadata");
  const auto& md = *h.metadata;
  DecayEnvelope env;
  if (md.family == "ising") {
    if (!(md.alpha > 2)) throw InvalidArgument("decay envelope of the power-law family requires alpha > 2");
    env.g0_analytic = md.alpha * std::abs(md.J) / (md.alpha - 2);
    env.alpha_bar = md.alpha - 2;
  } else if (md.family == "fermion") {
    if (!(md.alpha > 1.5)) throw InvalidArgument("decay envelope of the fermion chain requires alpha > 3/2");
    double a = md.alpha;
    env.g0_analytic = 4 * std::abs(md.J) * std::sqrt(2 * a / (2 * a - 1)) * (2 * a - 1) / (2 * a - 3);
    env.alpha_bar = a - 1.5;
  } else {
    throw InvalidArgument("unknown family " + md.family);
  }
  env.g0 = std::max(1.0, env.g0_analytic);
  return env;
}

std::vector<SamplePair> concatenated_pairs(int n) {
  std::vector<SamplePair> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b)
      for (int r = 1; b + r <= n; ++r)
        for (int c = b + r; c <= n; ++c) {
          SamplePair p;
          for (int s = a; s <= b; ++s) p.X.push_back(s);
          for (int s = b + r; s <= c; ++s) p.Y.push_back(s);
          for (int s = a; s <= c; ++s) p.lambda0.push_back(s);
          p.distance = r;
          out.push_back(std::move(p));
        }
  return out;
}

Report verify_assumption1(const Hamiltonian& h, const DecayEnvelope& env, const std::vector<SamplePair>& samples) {
  Report out;
  for (const auto& p : samples) {
    auto v = block_interaction(h, p.X, p.Y, p.lambda0);
    std::ostringstream c;
    c << "X=" << p.X.front() << '-' << p.X.back() << ";Y=" << p.Y.front() << '-' << p.Y.back() << ";r=" << p.distance;
    out.push_back(make_record("assumption1", v.norm, env.g0 * std::pow(p.distance, -env.alpha_bar), c.str()));
  }
  return out;
}

double local_energy_g(const Hamiltonian& h) {
  std::vector<double> load(h.lattice.n + 1, 0.0);
  for (const auto& t : h.terms)
    for (int s : t.support) load[s] += t.norm;
  return *std::max_element(load.begin(), load.end());
}

GroundStateInfo ground_state_by_parity(const Hamiltonian& h, double threshold) {
  if (h.lattice.d != 2) throw InvalidArgument("parity sectors need qubits");
  auto ops = local_ops(h.terms);
  struct Low {
    RVector w;
    RMatrix z;
    std::vector<long> states;
  };
  std::vector<Low> lows;
  for (int parity = 0; parity < 2; ++parity) {
    Low low;
    low.states = kernels::parity_sector_states(h.lattice.n, parity);
    RMatrix m = kernels::omp::assemble_sector(ops, h.lattice.n, parity);
    int k = static_cast<int>(std::min<long>(2, m.rows()));
    if (k == m.rows()) {
      lapack::syevd(m, low.w, true);
      low.z = std::move(m);
    } else {
      lapack::syevr_lowest(m, k, low.w, low.z);
    }
    lows.push_back(std::move(low));
  }
  std::vector<std::pair<double, std::pair<int, long>>> cand;
  for (int p = 0; p < 2; ++p)
    for (long j = 0; j < lows[p].w.size(); ++j) cand.push_back({lows[p].w(j), {p, j}});
  std::stable_sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  GroundStateInfo g;
  g.energy = cand[0].first;
  g.gap = cand.size() > 1 ? cand[1].first - cand[0].first : std::numeric_limits<double>::infinity();
  if (g.gap <= threshold) throw DegenerateGroundState("ground state is degenerate (gap " + std::to_string(g.gap) + ")");
  auto [p, j] = cand[0].second;
  g.state = Vector::Zero(h.lattice.dim);
  for (size_t i = 0; i < lows[p].states.size(); ++i) g.state(lows[p].states[i]) = lows[p].z(i, j);
  return g;
}

}  // namespace agsplab
