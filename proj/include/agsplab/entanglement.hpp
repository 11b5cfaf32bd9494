#pragma once

#include "agsplab/core.hpp"

namespace agsplab {

struct SchmidtData {
  RVector coefficients;  // descending
  Matrix left_vectors;   // columns
  Matrix right_vectors;  // columns
  int cut = 0;
};

// psi(iL, iR) with L = sites 1..cut
Matrix state_matrix(const Vector& state, int cut, int n, int d = 2);
SchmidtData schmidt_decompose(const Vector& state, int cut, int n, int d = 2);
Vector product_state(const Vector& left, const Vector& right);
Vector reconstruct(const SchmidtData& s, long count = -1);

double entropy(const SchmidtData& s);
double renyi2(const SchmidtData& s);
Matrix reduced_density_left(const Vector& state, int cut, int n, int d = 2);
double entropy_of_density(const Matrix& rho);
double renyi2_of_density(const Matrix& rho);

double numerical_rank_tolerance(double largest);
long schmidt_rank(const SchmidtData& s);
long schmidt_rank(const Vector& state, int cut, int n, int d = 2);

// top-D truncation; renormalized when normalize is set
Vector truncate_schmidt(const SchmidtData& s, long D, bool normalize);

BoundRecord eckart_young_check(const Vector& psi, const Vector& psi_prime, int cut, int n, int d = 2,
                               double slack = kBoundSlack);

struct MpsState {
  int n = 0;
  int d = 2;
  std::vector<std::vector<Matrix>> tensors;  // tensors[i][s] is D_{i-1} x D_i
  std::vector<long> bond_dims;               // n-1 bonds
  std::vector<double> truncation_weights;    // tail weight of the input state at each bond

  Vector contract() const;
  double left_canonical_defect() const;
};

MpsState mps_compress(const Vector& state, int n, long D, int d = 2);
BoundRecord claim7_check(const Vector& state, const MpsState& mps, long D);

}  // namespace agsplab
