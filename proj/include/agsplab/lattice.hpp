#pragma once

#include <optional>

#include "agsplab/core.hpp"
#include "agsplab/kernels.hpp"

namespace agsplab {

struct LatticeSpec {
  int n = 0;
  int d = 2;
  long dim = 0;

  LatticeSpec() = default;
  LatticeSpec(int n, int d = 2);
};

struct InteractionTerm {
  std::vector<int> support;  // 1-based, ascending
  Matrix matrix;
  double norm = 0;

  InteractionTerm() = default;
  InteractionTerm(std::vector<int> support, Matrix matrix, int d = 2);
  int diameter() const { return support.empty() ? 0 : support.back() - support.front(); }
};

struct FamilyMetadata {
  std::string family;  // "ising" or "fermion"
  double alpha = 0;
  double J = 0;  // J for Ising, J-tilde for the fermion chain
  double B = 0;
};

struct Hamiltonian {
  LatticeSpec lattice;
  std::vector<InteractionTerm> terms;
  int k = 0;
  std::optional<FamilyMetadata> metadata;
};

struct DecayEnvelope {
  double g0 = 1;
  double alpha_bar = 1;
  double g0_analytic = 1;
};

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);

Hamiltonian make_hamiltonian(const LatticeSpec& lattice, std::vector<InteractionTerm> terms, int k = 0);
Hamiltonian build_long_range_ising(int n, double alpha, double J, double B);
// A, B: n x n coupling tables, only i<j entries are read
Hamiltonian build_long_range_fermion_chain(int n, double alpha, const Matrix& A, const Matrix& B, double J_tilde,
                                           const std::vector<InteractionTerm>& local_terms = {});

std::vector<kernels::LocalOp> local_ops(const std::vector<InteractionTerm>& terms);
Matrix assemble_terms(const std::vector<InteractionTerm>& terms, int n, int d = 2);
Matrix assemble_dense(const Hamiltonian& h);

struct BlockInteraction {
  Matrix op;  // on Lambda0 (ascending sites)
  double norm = 0;
  std::vector<int> lambda0;
  std::vector<InteractionTerm> terms;
};

BlockInteraction block_interaction(const Hamiltonian& h, const std::vector<int>& X, const std::vector<int>& Y,
                                   const std::vector<int>& lambda0);

DecayEnvelope decay_envelope(const Hamiltonian& h);

struct SamplePair {
  std::vector<int> X, Y, lambda0;
  int distance = 1;
};
// X=[a,b], Y=[b+r,c], Lambda0=[a,c]
std::vector<SamplePair> concatenated_pairs(int n);

Report verify_assumption1(const Hamiltonian& h, const DecayEnvelope& env, const std::vector<SamplePair>& samples);

double local_energy_g(const Hamiltonian& h);

struct GroundStateInfo;
// ground state through the two parity sectors of prod Z; needs real, parity-conserving qubit terms
GroundStateInfo ground_state_by_parity(const Hamiltonian& h, double threshold = kDegeneracyTol);

}  // namespace agsplab
