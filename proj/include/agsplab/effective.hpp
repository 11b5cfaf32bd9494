#pragma once

#include "agsplab/truncation.hpp"

namespace agsplab {

struct Lambdas {
  double lambda = 0;
  double lambda_prime = 0;
};

Lambdas compute_lambdas(double g, double g0, int k);

// same eigenvectors as h, eigenvalues min(E_j, tau_s)
Matrix energy_cutoff(const Matrix& h, double tau_s);
Matrix energy_cutoff(const SpectralData& s, double tau_s);

struct EffectiveHamiltonian {
  TruncatedHamiltonian base;
  double tau = 0;
  std::vector<double> tau_s;
  std::vector<InteractionTerm> internal_eff;
  Lambdas lambdas;

  Matrix dense() const;
  Matrix dense_difference() const;  // H_t - H~_t
};

EffectiveHamiltonian build_effective(const TruncatedHamiltonian& t, double tau);

// shared spectra of H_t and H~_t used by all checks below
struct EffectiveSpectra {
  SpectralData truncated;
  SpectralData effective;
  GroundStateInfo gs_t;
  GroundStateInfo gs_eff;
};
EffectiveSpectra effective_spectra(const EffectiveHamiltonian& eff, const SpectralData* truncated = nullptr);

// norm of H~_t and upper bounds on its gap
Report effective_norm_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp);

struct Theorem5Diagnostics {
  double tau = 0;
  double gap_t = 0;
  double gap_eff = 0;
  double gap_ratio = 0;
  double overlap_distance = 0;
  double kappa = 0;
  double e_bot = 0;
  bool precondition_met = false;
  double overlap_bound = 0;
  double kappa_bound = 0;
};

double theorem5_tau_threshold(const TruncatedHamiltonian& t, double gap_t);

struct Theorem5Result {
  std::vector<Theorem5Diagnostics> points;
  Report records;
};
Theorem5Diagnostics theorem5_point(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp);
Theorem5Result theorem5_check(const TruncatedHamiltonian& t, const std::vector<double>& tau_grid,
                              const SpectralData* truncated = nullptr);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  int points = 0;
};
SlopeFit fit_log_decay(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-12);

// grids are offsets: E' = E_{s,0} + dEp, E = E_{t,0} + dE (or the effective ground energy)
Report energy_distribution_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp,
                                 const std::vector<double>& dEp_grid, const std::vector<double>& dE_grid);
Report effective_difference_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp,
                                  const std::vector<double>& dE_grid);

// O_s acts on block s; [O_s, h_s] = 0 is checked. effective=true uses H~_t projectors and lambda'
Report exponential_filter_check(const EffectiveHamiltonian& eff, const EffectiveSpectra& sp, int s, const Matrix& O_s,
                                double E, double E_prime, bool effective = false);

Report commutator_check(const TruncatedHamiltonian& t);

}  // namespace agsplab
