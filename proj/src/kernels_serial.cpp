#include "kernels_common.hpp"

namespace agsplab::kernels {

std::vector<long> parity_sector_states(int n, int parity) {
  std::vector<long> out;
  long dim = detail::full_dim(n, 2);
  out.reserve(dim / 2 + 1);
  for (long r = 0; r < dim; ++r)
    if ((__builtin_popcountl(r) & 1) == (parity & 1)) out.push_back(r);
  return out;
}

namespace serial {

Matrix assemble(const std::vector<LocalOp>& ops, int n, int d) {
  auto cs = detail::compile_all(ops, n, d);
  long dim = detail::full_dim(n, d);
  Matrix out = Matrix::Zero(dim, dim);
  for (long r = 0; r < dim; ++r) detail::assemble_row(cs, r, d, out);
  return out;
}

void apply(const LocalOp& op, int n, int d, const Matrix& in, Matrix& out) {
  auto c = detail::compile(op, n, d);
  for (long r = 0; r < in.rows(); ++r) detail::apply_row(c, r, d, in, out);
}

Matrix rearrange(const Matrix& op, long dim_left, long dim_right) {
  Matrix out(dim_left * dim_left, dim_right * dim_right);
  for (long row = 0; row < out.rows(); ++row) detail::rearrange_row(op, dim_left, dim_right, row, out);
  return out;
}

RMatrix assemble_sector(const std::vector<LocalOp>& ops, int n, int parity) {
  auto cs = detail::compile_all(ops, n, 2);
  detail::check_sector_ops(cs);
  auto s = detail::make_sector(n, parity);
  long dim = static_cast<long>(s.states.size());
  RMatrix out = RMatrix::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) detail::sector_row(cs, s, i, out);
  return out;
}

}  // namespace serial
}  // namespace agsplab::kernels
