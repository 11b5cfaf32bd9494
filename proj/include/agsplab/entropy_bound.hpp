#pragma once

#include "agsplab/agsp.hpp"

namespace agsplab {

// gammas: gamma_1..gamma_P, ranks: D_1..D_{P+1}; gamma_0 = 1 is implicit
double agsp_entropy_bound(long D_phi, const std::vector<double>& gammas, const std::vector<long>& ranks);

struct SequenceParams {
  int m = 2;
  int l = 1;
  double tau = 1;
};

struct SequenceStep {
  int p = 0;
  SequenceParams params;
  double epsilon = 0;
  double delta = 0;
  double gamma = 0;
  double measured_distance = 0;
  long D = 0;
  int escalations = 0;
};

struct AgspSequence {
  double nu0 = 0;
  long D_phi = 0;
  std::vector<SequenceStep> steps;
  long D_terminal = 0;  // rank of the exact projector closing the sequence
  double bound = 0;
  Report records;
};

struct SequenceLimits {
  int p_max = 32;
  int budget = 64;  // total escalation steps
  int m_max = 256;
};

AgspSequence agsp_sequence(const Hamiltonian& h, const Vector& target, const Vector& phi, int q, int cut,
                           SequenceParams start, const SequenceLimits& limits = {});

}  // namespace agsplab
