#include "agsplab/truncation.hpp"

#include <algorithm>
#include <cmath>

namespace agsplab {

std::vector<int> BlockDecomposition::block_pair(int s) const {
  std::vector<int> out = blocks[s];
  out.insert(out.end(), blocks[s + 1].begin(), blocks[s + 1].end());
  return out;
}

BlockDecomposition decompose_blocks(int n, int q, int l, std::optional<int> cut_position) {
  if (q < 2 || q % 2) throw InvalidArgument("q must be even and at least 2");
  if (l < 1) throw InvalidArgument("block length must be positive");
  if (q * l > n) throw InvalidArgument("q*l exceeds the number of sites");
  int rest = n - q * l;
  int left_edge = (rest + 1) / 2;
  if (cut_position) {
    left_edge = *cut_position - q * l / 2;
    if (left_edge < 0 || left_edge > rest) throw InvalidArgument("cut position leaves no room for the bulk blocks");
  }
  BlockDecomposition b;
  b.n = n;
  b.q = q;
  b.l = l;
  int site = 1;
  auto take = [&](int count) {
    std::vector<int> blk;
    for (int i = 0; i < count; ++i) blk.push_back(site++);
    b.blocks.push_back(std::move(blk));
  };
  take(left_edge);
  for (int s = 0; s < q; ++s) take(l);
  take(rest - left_edge);
  b.cut = left_edge + q * l / 2;
  return b;
}

namespace {

InteractionTerm gather(const std::vector<InteractionTerm>& terms, const std::vector<int>& sites, int n, int d,
                       double diagonal) {
  std::vector<int> position(n + 1, -1);
  for (size_t p = 0; p < sites.size(); ++p) position[sites[p]] = static_cast<int>(p) + 1;
  std::vector<InteractionTerm> local;
  for (const auto& t : terms) {
    InteractionTerm m = t;
    for (int& s : m.support) s = position[s];
    local.push_back(std::move(m));
  }
  Matrix op = kernels::omp::assemble(local_ops(local), static_cast<int>(sites.size()), d);
  op.diagonal().array() += diagonal;
  return InteractionTerm(sites, std::move(op), d);
}

}  // namespace

std::vector<kernels::LocalOp> TruncatedHamiltonian::block_op(int s, const Matrix& local) const {
  kernels::LocalOp op;
  for (int site : blocks.blocks[s]) op.sites.push_back(site - 1);
  op.matrix = &local;
  return {op};
}

Matrix TruncatedHamiltonian::dense() const {
  std::vector<InteractionTerm> all = internal;
  all.insert(all.end(), bonds.begin(), bonds.end());
  return assemble_terms(all, lattice.n, lattice.d);
}

Matrix TruncatedHamiltonian::dense_dropped() const { return assemble_terms(dropped, lattice.n, lattice.d); }

Matrix TruncatedHamiltonian::dense_original(const Hamiltonian& h) const {
  Matrix m = assemble_dense(h);
  m.diagonal().array() += origin;
  return m;
}

TruncatedHamiltonian truncate_interactions(const Hamiltonian& h, const BlockDecomposition& blocks,
                                           std::optional<DecayEnvelope> envelope) {
  if (blocks.n != h.lattice.n) throw InvalidArgument("block decomposition does not match the lattice");
  TruncatedHamiltonian t;
  t.blocks = blocks;
  t.lattice = h.lattice;
  t.k = h.k;
  t.envelope = envelope ? *envelope : decay_envelope(h);
  t.g = local_energy_g(h);

  int nb = blocks.count();
  std::vector<int> block_of(h.lattice.n + 1, 0);
  for (int s = 0; s < nb; ++s)
    for (int site : blocks.blocks[s]) block_of[site] = s;

  std::vector<std::vector<InteractionTerm>> inner(nb), bond(nb - 1);
  for (const auto& term : h.terms) {
    if (term.support.empty()) {
      inner[0].push_back(term);
      continue;
    }
    int lo = block_of[term.support.front()], hi = block_of[term.support.back()];
    if (lo == hi)
      inner[lo].push_back(term);
    else if (hi == lo + 1)
      bond[lo].push_back(term);
    else
      t.dropped.push_back(term);
  }

  int n = h.lattice.n, d = h.lattice.d;
  for (int s = 0; s < nb; ++s) t.internal.push_back(gather(inner[s], blocks.blocks[s], n, d, 0.0));
  for (int s = 0; s + 1 < nb; ++s) t.bonds.push_back(gather(bond[s], blocks.block_pair(s), n, d, 0.0));

  double raw_ground = lowest_eigenpairs(t.dense(), 1).eigenvalues(0);
  t.origin = -raw_ground;
  for (auto& term : t.internal) {
    Matrix m = term.matrix;
    m.diagonal().array() += t.origin / nb;
    term = InteractionTerm(term.support, std::move(m), d);
  }
  t.energy_shifts.assign(nb, 0.0);
  for (const auto& term : t.internal) t.block_spectra.push_back(eigendecompose(term.matrix));
  return t;
}

TruncatedHamiltonian shift_block_energies(const TruncatedHamiltonian& in) {
  TruncatedHamiltonian t = in;
  int nb = t.blocks.count();
  double mean = 0;
  for (int s = 0; s < nb; ++s) mean += t.block_ground(s);
  mean /= nb;
  for (int s = 0; s < nb; ++s) {
    double shift = mean - t.block_ground(s);
    t.energy_shifts[s] += shift;
    Matrix m = t.internal[s].matrix;
    m.diagonal().array() += shift;
    t.internal[s] = InteractionTerm(t.internal[s].support, std::move(m), t.lattice.d);
    t.block_spectra[s].eigenvalues.array() += shift;
  }
  return t;
}

Report block_checks(const TruncatedHamiltonian& t) {
  Report out;
  double g0 = t.envelope.g0;
  int q = t.blocks.q;
  for (size_t s = 0; s < t.bonds.size(); ++s)
    out.push_back(make_record("assumption1", t.bonds[s].norm, g0, ctx({{"bond", double(s)}, {"r", 1}})));
  for (int s = 0; s < t.blocks.count(); ++s)
    out.push_back(make_record("lemma12.shift", std::abs(t.block_ground(s)), g0 * (q + 1) / (q + 2),
                              ctx({{"s", double(s)}})));
  return out;
}

Lemma34Result verify_lemma3_4(const Hamiltonian& h, const TruncatedHamiltonian& t) {
  Lemma34Result res;
  const auto& b = t.blocks;
  std::string c = ctx({{"n", double(b.n)}, {"q", double(b.q)}, {"l", double(b.l)}});

  SpectralData full = eigendecompose(t.dense_original(h));
  SpectralData trunc = eigendecompose(t.dense());
  res.full = ground_state(full);
  res.truncated = ground_state(trunc);
  res.dh_norm = t.dropped.empty() ? 0.0 : hermitian_norm(t.dense_dropped());

  double dh = res.dh_norm;
  double envelope_bound = t.envelope.g0 * b.q * std::pow(b.l, -t.envelope.alpha_bar);
  res.records.push_back(make_record("lemma3.norm", dh, envelope_bound, c));

  double weyl = (full.eigenvalues - trunc.eigenvalues).cwiseAbs().maxCoeff();
  res.records.push_back(make_record("weyl", weyl, dh, c));

  res.records.push_back(make_record("lemma3.gap", res.full.gap - 2 * dh, res.truncated.gap, c));

  res.overlap_distance = aligned_distance(res.full.state, res.truncated.state);
  res.full_spectrum = std::move(full);
  res.truncated_spectrum = std::move(trunc);
  if (4 * dh < res.full.gap) {
    res.overlap_checked = true;
    res.records.push_back(make_record("lemma4.overlap", res.overlap_distance, dh / (res.full.gap - 4 * dh), c));
  }
  return res;
}

}  // namespace agsplab
