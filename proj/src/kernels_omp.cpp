#include "kernels_common.hpp"

namespace agsplab::kernels::omp {

Matrix assemble(const std::vector<LocalOp>& ops, int n, int d) {
  auto cs = detail::compile_all(ops, n, d);
  long dim = detail::full_dim(n, d);
  Matrix out = Matrix::Zero(dim, dim);
#pragma omp parallel for schedule(static)
  for (long r = 0; r < dim; ++r) detail::assemble_row(cs, r, d, out);
  return out;
}

void apply(const LocalOp& op, int n, int d, const Matrix& in, Matrix& out) {
  auto c = detail::compile(op, n, d);
  long rows = in.rows();
#pragma omp parallel for schedule(static)
  for (long r = 0; r < rows; ++r) detail::apply_row(c, r, d, in, out);
}

Matrix rearrange(const Matrix& op, long dim_left, long dim_right) {
  Matrix out(dim_left * dim_left, dim_right * dim_right);
  long rows = out.rows();
#pragma omp parallel for schedule(static)
  for (long row = 0; row < rows; ++row) detail::rearrange_row(op, dim_left, dim_right, row, out);
  return out;
}

RMatrix assemble_sector(const std::vector<LocalOp>& ops, int n, int parity) {
  auto cs = detail::compile_all(ops, n, 2);
  detail::check_sector_ops(cs);
  auto s = detail::make_sector(n, parity);
  long dim = static_cast<long>(s.states.size());
  RMatrix out = RMatrix::Zero(dim, dim);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < dim; ++i) detail::sector_row(cs, s, i, out);
  return out;
}

}  // namespace agsplab::kernels::omp
