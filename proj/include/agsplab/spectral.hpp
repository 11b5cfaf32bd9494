#pragma once

#include <limits>

#include "agsplab/core.hpp"

namespace agsplab {

struct SpectralData {
  RVector eigenvalues;  // ascending
  Matrix eigenvectors;  // columns
  long source_dim = 0;
};

struct GroundStateInfo {
  double energy = 0;
  Vector state;
  double gap = 0;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double x) const {
    bool above = lo_closed ? x >= lo : x > lo;
    bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  static Interval at_most(double x) { return {-std::numeric_limits<double>::infinity(), x, true, true}; }
  static Interval below(double x) { return {-std::numeric_limits<double>::infinity(), x, true, false}; }
  static Interval above(double x) { return {x, std::numeric_limits<double>::infinity(), false, true}; }
  static Interval at_least(double x) { return {x, std::numeric_limits<double>::infinity(), true, true}; }
  static Interval all() { return {}; }
};

SpectralData eigendecompose(const Matrix& m);
RVector eigenvalues(const Matrix& m);
SpectralData lowest_eigenpairs(const Matrix& m, int count);
SpectralData lowest_eigenpairs(const RMatrix& m, int count);

GroundStateInfo ground_state(const SpectralData& s, double threshold = kDegeneracyTol);
GroundStateInfo ground_state(const Matrix& m, double threshold = kDegeneracyTol);

Matrix interval_basis(const SpectralData& s, const Interval& iv);
Matrix interval_projector(const SpectralData& s, const Interval& iv);
long interval_rank(const SpectralData& s, const Interval& iv);

double hermitian_norm(const Matrix& m);
RVector singular_values(const Matrix& m);
double operator_norm(const Matrix& m);

// v times the unit phase making <ref|v> real and non-negative
Vector phase_aligned(const Vector& ref, const Vector& v);
double aligned_distance(const Vector& ref, const Vector& v);

// false when the linked LAPACK fails a small eigenvector self-test; Eigen's solvers are used instead
bool lapack_backend_ok();
// re-executes the program once with OPENBLAS_CORETYPE=Haswell when the self-test fails
void ensure_reliable_blas(char** argv);

// index sets of the connected components of the nonzero pattern
std::vector<std::vector<long>> decoupled_blocks(const Matrix& m);

}  // namespace agsplab
