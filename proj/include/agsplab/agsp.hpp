#pragma once

#include "agsplab/effective.hpp"
#include "agsplab/entanglement.hpp"

namespace agsplab {

double chebyshev_T(int m, double x);
Report chebyshev_lemma11_check(const std::vector<int>& degrees, const std::vector<double>& points);

// x is measured from the target ground energy; width is the spectral width of the filtered operator
struct FilterWindow {
  double ground = 0;
  double gap = 0;
  double width = 0;
};

double filter_value(int m, double x, const FilterWindow& w);
double chebyshev_bound(int m, double gap, double width);

struct AgspFilter {
  int m = 0;
  Matrix K;
  Vector fixed_state;
  FilterWindow window;
  double cheb_bound = 0;
  double sup_excited = 0;  // max |K(x_j)| over excited eigenvalues
};

AgspFilter agsp_filter(const SpectralData& spectrum, int m);
AgspFilter agsp_filter(const EffectiveHamiltonian& eff, int m);
Matrix agsp_filter_clenshaw(const Matrix& h, const FilterWindow& w, int m);

struct SchmidtRankResult {
  long rank = 0;
  RVector singular_values;
  double tolerance_used = 0;
};

SchmidtRankResult operator_schmidt_rank(const Matrix& op, int cut, int n, int d = 2);

struct AgspReport {
  int m = 0;
  double delta_K = 0;
  double epsilon_K = 0;
  long D_K = 0;
  double cheb_bound = 0;
};

AgspReport measure_agsp(const Matrix& K, const Vector& target, const Vector& fixed, int cut, int n, int d = 2);

double lemma8_bound(int d, int l, int k, int m);
double prop4_bound(int d, int q, int l, int k, int m);
bool prop4_assumption(int d, int q, int l, int m);

// SR of H_t^m (and H~_t^m when eff is given) for m = 1..m_max across the block cut
Report schmidt_rank_bound_check(const TruncatedHamiltonian& t, const EffectiveHamiltonian* eff, int m_max);

struct BootstrapResult {
  bool precondition_met = false;
  Vector state;
  double mu1 = 0;
  bool tie = false;
  double distance = 0;
  double distance_bound = 0;
  long schmidt_rank = 0;
  Report records;
};

BootstrapResult bootstrap_state(const Matrix& K, const AgspReport& report, const Vector& fixed, const Vector& target,
                                int cut, int n, int d = 2);

}  // namespace agsplab
