#pragma once

#include <optional>

#include "agsplab/lattice.hpp"
#include "agsplab/spectral.hpp"

namespace agsplab {

struct BlockDecomposition {
  int n = 0;
  int q = 0;
  int l = 0;
  std::vector<std::vector<int>> blocks;  // B_0 .. B_{q+1}, 1-based sites
  int cut = 0;                           // L = sites 1..cut

  int count() const { return q + 2; }
  std::vector<int> block_pair(int s) const;  // B_s then B_{s+1}
};

// cut_position defaults to centring the bulk blocks; the left edge block takes the odd site
BlockDecomposition decompose_blocks(int n, int q, int l, std::optional<int> cut_position = {});

struct TruncatedHamiltonian {
  BlockDecomposition blocks;
  LatticeSpec lattice;
  int k = 0;
  DecayEnvelope envelope;
  double g = 0;
  std::vector<InteractionTerm> internal;  // h_s, origin share and block shifts included
  std::vector<InteractionTerm> bonds;     // h_{s,s+1}
  std::vector<InteractionTerm> dropped;
  std::vector<double> energy_shifts;
  double origin = 0;  // constant added to H and H_t so that E_{t,0} = 0
  std::vector<SpectralData> block_spectra;

  Matrix dense() const;
  Matrix dense_dropped() const;
  Matrix dense_original(const Hamiltonian& h) const;  // H + origin
  double block_ground(int s) const { return block_spectra[s].eigenvalues(0); }
  std::vector<kernels::LocalOp> block_op(int s, const Matrix& local) const;
};

TruncatedHamiltonian truncate_interactions(const Hamiltonian& h, const BlockDecomposition& blocks,
                                           std::optional<DecayEnvelope> envelope = {});
TruncatedHamiltonian shift_block_energies(const TruncatedHamiltonian& t);

// bond norms against g0 and the post-shift block ground energies
Report block_checks(const TruncatedHamiltonian& t);

struct Lemma34Result {
  Report records;
  double dh_norm = 0;
  GroundStateInfo full;
  GroundStateInfo truncated;
  double overlap_distance = 0;
  bool overlap_checked = false;
  SpectralData full_spectrum;       // of H + origin
  SpectralData truncated_spectrum;  // of H_t
};

Lemma34Result verify_lemma3_4(const Hamiltonian& h, const TruncatedHamiltonian& t);

}  // namespace agsplab
