#pragma once

#include "agsplab/kernels.hpp"

namespace agsplab::kernels::detail {

struct Compiled {
  int width = 0;
  long local_dim = 1;
  std::vector<long> strides;
  std::vector<long> offset;
  std::vector<long> rowptr;
  std::vector<long> colidx;
  std::vector<cplx> val;

  long local_index(long r, int d) const {
    long idx = 0;
    for (int k = 0; k < width; ++k) idx = idx * d + (r / strides[k]) % d;
    return idx;
  }
};

inline Compiled compile(const LocalOp& op, int n, int d) {
  Compiled c;
  c.width = static_cast<int>(op.sites.size());
  for (int k = 0; k < c.width; ++k) c.local_dim *= d;
  if (!op.matrix || op.matrix->rows() != c.local_dim || op.matrix->cols() != c.local_dim)
    throw InvalidArgument("local operator dimension does not match its support");
  c.strides.resize(c.width);
  for (int k = 0; k < c.width; ++k) {
    int p = op.sites[k];
    if (p < 0 || p >= n) throw InvalidArgument("local operator site out of range");
    long s = 1;
    for (int j = p + 1; j < n; ++j) s *= d;
    c.strides[k] = s;
  }
  c.offset.assign(c.local_dim, 0);
  for (long li = 0; li < c.local_dim; ++li) {
    long rem = li, off = 0;
    for (int k = c.width - 1; k >= 0; --k) {
      off += (rem % d) * c.strides[k];
      rem /= d;
    }
    c.offset[li] = off;
  }
  const Matrix& m = *op.matrix;
  c.rowptr.assign(c.local_dim + 1, 0);
  for (long i = 0; i < c.local_dim; ++i) {
    for (long j = 0; j < c.local_dim; ++j) {
      cplx v = m(i, j) * op.coeff;
      if (v != cplx(0.0, 0.0)) {
        c.colidx.push_back(j);
        c.val.push_back(v);
      }
    }
    c.rowptr[i + 1] = static_cast<long>(c.colidx.size());
  }
  return c;
}

inline std::vector<Compiled> compile_all(const std::vector<LocalOp>& ops, int n, int d) {
  std::vector<Compiled> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(compile(op, n, d));
  return out;
}

inline long full_dim(int n, int d) {
  long dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;
  return dim;
}

inline void assemble_row(const std::vector<Compiled>& cs, long r, int d, Matrix& out) {
  for (const auto& c : cs) {
    long lr = c.local_index(r, d);
    long base = r - c.offset[lr];
    for (long e = c.rowptr[lr]; e < c.rowptr[lr + 1]; ++e) out(r, base + c.offset[c.colidx[e]]) += c.val[e];
  }
}

inline void apply_row(const Compiled& c, long r, int d, const Matrix& in, Matrix& out) {
  long lr = c.local_index(r, d);
  long base = r - c.offset[lr];
  for (long e = c.rowptr[lr]; e < c.rowptr[lr + 1]; ++e)
    out.row(r) += c.val[e] * in.row(base + c.offset[c.colidx[e]]);
}

inline void rearrange_row(const Matrix& op, long dl, long dr, long row, Matrix& out) {
  long il = row / dl, jl = row % dl;
  for (long ir = 0; ir < dr; ++ir)
    for (long jr = 0; jr < dr; ++jr) out(row, ir * dr + jr) = op(il * dr + ir, jl * dr + jr);
}

struct Sector {
  std::vector<long> states;
  std::vector<long> index;
};

inline Sector make_sector(int n, int parity) {
  Sector s;
  s.states = parity_sector_states(n, parity);
  s.index.assign(full_dim(n, 2), -1);
  for (long i = 0; i < static_cast<long>(s.states.size()); ++i) s.index[s.states[i]] = i;
  return s;
}

inline void check_sector_ops(const std::vector<Compiled>& cs) {
  for (const auto& c : cs) {
    for (long i = 0; i < c.local_dim; ++i)
      for (long e = c.rowptr[i]; e < c.rowptr[i + 1]; ++e) {
        if (c.val[e].imag() != 0.0) throw InvalidArgument("sector assembly requires real operators");
        if ((__builtin_popcountl(i) ^ __builtin_popcountl(c.colidx[e])) & 1)
          throw InvalidArgument("operator does not conserve parity");
      }
  }
}

inline void sector_row(const std::vector<Compiled>& cs, const Sector& s, long i, RMatrix& out) {
  long r = s.states[i];
  for (const auto& c : cs) {
    long lr = c.local_index(r, 2);
    long base = r - c.offset[lr];
    for (long e = c.rowptr[lr]; e < c.rowptr[lr + 1]; ++e)
      out(i, s.index[base + c.offset[c.colidx[e]]]) += c.val[e].real();
  }
}

}  // namespace agsplab::kernels::detail
