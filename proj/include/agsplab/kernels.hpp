#pragma once

#include "agsplab/core.hpp"

// Dense many-body kernels. serial:: is the reference, omp:: is what the library uses.
// Site positions here are 0-based; site 0 is the most significant digit of a basis index.

namespace agsplab::kernels {

struct LocalOp {
  std::vector<int> sites;
  const Matrix* matrix = nullptr;
  cplx coeff{1.0, 0.0};
};

namespace serial {
Matrix assemble(const std::vector<LocalOp>& ops, int n, int d);
void apply(const LocalOp& op, int n, int d, const Matrix& in, Matrix& out);
Matrix rearrange(const Matrix& op, long dim_left, long dim_right);
RMatrix assemble_sector(const std::vector<LocalOp>& ops, int n, int parity);
}  // namespace serial

namespace omp {
Matrix assemble(const std::vector<LocalOp>& ops, int n, int d);
void apply(const LocalOp& op, int n, int d, const Matrix& in, Matrix& out);
Matrix rearrange(const Matrix& op, long dim_left, long dim_right);
RMatrix assemble_sector(const std::vector<LocalOp>& ops, int n, int parity);
}  // namespace omp

// basis states of n qubits with popcount parity equal to `parity`, ascending
std::vector<long> parity_sector_states(int n, int parity);

}  // namespace agsplab::kernels
