#include "agsplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <unistd.h>

#include "lapack_wrap.hpp"

namespace agsplab {

namespace {

void require_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  double scale = m.size() ? std::max(1.0, m.cwiseAbs().maxCoeff()) : 1.0;
  double defect = hermiticity_defect(m);
  if (defect > kHermitianTol * scale)
    throw InvalidArgument("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

// count < 0 means all eigenpairs
SpectralData solve_single(const Matrix& m, bool vectors, int count) {
  SpectralData s;
  s.source_dim = m.rows();
  long n = m.rows();
  if (n == 0) return s;
  int k = count < 0 ? static_cast<int>(n) : std::min<long>(count, n);
  if (is_real(m)) {
    RMatrix a = m.real();
    RMatrix z;
    if (k == n) {
      lapack::syevd(a, s.eigenvalues, vectors);
      if (vectors) z = std::move(a);
    } else {
      lapack::syevr_lowest(a, k, s.eigenvalues, z);
    }
    if (vectors) s.eigenvectors = z.cast<cplx>();
  } else {
    Matrix a = m;
    if (k == n) {
      lapack::heevd(a, s.eigenvalues, vectors);
      if (vectors) s.eigenvectors = std::move(a);
    } else {
      lapack::heevr_lowest(a, k, s.eigenvalues, s.eigenvectors);
    }
  }
  return s;
}

SpectralData solve(const Matrix& m, bool vectors, int count) {
  auto blocks = decoupled_blocks(m);
  if (blocks.size() <= 1) return solve_single(m, vectors, count);

  std::vector<SpectralData> parts;
  parts.reserve(blocks.size());
  for (const auto& idx : blocks) parts.push_back(solve_single(m(idx, idx), vectors, count));

  struct Entry {
    double value;
    size_t block;
    long col;
  };
  std::vector<Entry> entries;
  for (size_t b = 0; b < parts.size(); ++b)
    for (long j = 0; j < parts[b].eigenvalues.size(); ++j) entries.push_back({parts[b].eigenvalues(j), b, j});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
  long n = m.rows();
  long k = count < 0 ? n : std::min<long>(count, static_cast<long>(entries.size()));

  SpectralData s;
  s.source_dim = n;
  s.eigenvalues.resize(k);
  if (vectors) s.eigenvectors = Matrix::Zero(n, k);
  for (long c = 0; c < k; ++c) {
    const auto& e = entries[c];
    s.eigenvalues(c) = e.value;
    if (vectors) {
      const auto& idx = blocks[e.block];
      for (size_t i = 0; i < idx.size(); ++i) s.eigenvectors(idx[i], c) = parts[e.block].eigenvectors(i, e.col);
    }
  }
  return s;
}

}  // namespace

bool lapack_backend_ok() {
  static const bool ok = [] {
    const lapack_int n = 256;
    RMatrix a(n, n);
    for (lapack_int j = 0; j < n; ++j)
      for (lapack_int i = 0; i < n; ++i) a(i, j) = std::sin(0.37 * (i + 1) * (j + 1)) + std::cos(0.11 * (i + j));
    RMatrix orig = a;
    RVector w(n);
    if (LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data()) != 0) return false;
    double scale = orig.norm();
    double ortho = (a.transpose() * a - RMatrix::Identity(n, n)).norm();
    double resid = (orig * a - a * w.asDiagonal()).norm() / scale;
    return ortho < 1e-10 && resid < 1e-10;
  }();
  return ok;
}

void ensure_reliable_blas(char** argv) {
  if (lapack_backend_ok() || std::getenv("OPENBLAS_CORETYPE")) return;
  setenv("OPENBLAS_CORETYPE", "Haswell", 1);
  execv("/proc/self/exe", argv);
}

std::vector<std::vector<long>> decoupled_blocks(const Matrix& m) {
  long n = m.rows();
  std::vector<long> parent(n);
  std::iota(parent.begin(), parent.end(), 0L);
  auto find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < j; ++i)
      if (m(i, j) != cplx(0.0, 0.0)) {
        long a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<long>> out;
  std::vector<long> slot(n, -1);
  for (long i = 0; i < n; ++i) {
    long r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

SpectralData eigendecompose(const Matrix& m) {
  require_hermitian(m);
  return solve(m, true, -1);
}

RVector eigenvalues(const Matrix& m) {
  require_hermitian(m);
  return solve(m, false, -1).eigenvalues;
}

SpectralData lowest_eigenpairs(const Matrix& m, int count) {
  require_hermitian(m);
  return solve(m, true, count);
}

SpectralData lowest_eigenpairs(const RMatrix& m, int count) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  SpectralData s;
  s.source_dim = m.rows();
  if (m.rows() == 0) return s;
  RMatrix a = m;
  RMatrix z;
  long k = std::min<long>(count, m.rows());
  if (k == m.rows()) {
    lapack::syevd(a, s.eigenvalues, true);
    z = std::move(a);
  } else {
    lapack::syevr_lowest(a, static_cast<int>(k), s.eigenvalues, z);
  }
  s.eigenvectors = z.cast<cplx>();
  return s;
}

GroundStateInfo ground_state(const SpectralData& s, double threshold) {
  if (s.eigenvalues.size() == 0) throw InvalidArgument("empty spectrum");
  GroundStateInfo g;
  g.energy = s.eigenvalues(0);
  g.state = s.eigenvectors.col(0);
  g.gap = s.eigenvalues.size() > 1 ? s.eigenvalues(1) - s.eigenvalues(0) : std::numeric_limits<double>::infinity();
  if (g.gap <= threshold)
    throw DegenerateGroundState("ground state is degenerate (gap " + std::to_string(g.gap) + ")");
  return g;
}

GroundStateInfo ground_state(const Matrix& m, double threshold) {
  return ground_state(lowest_eigenpairs(m, 2), threshold);
}

Matrix interval_basis(const SpectralData& s, const Interval& iv) {
  std::vector<long> cols;
  for (long j = 0; j < s.eigenvalues.size(); ++j)
    if (iv.contains(s.eigenvalues(j))) cols.push_back(j);
  Matrix out(s.eigenvectors.rows(), static_cast<long>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) out.col(c) = s.eigenvectors.col(cols[c]);
  return out;
}

Matrix interval_projector(const SpectralData& s, const Interval& iv) {
  Matrix v = interval_basis(s, iv);
  return v * v.adjoint();
}

long interval_rank(const SpectralData& s, const Interval& iv) {
  long r = 0;
  for (long j = 0; j < s.eigenvalues.size(); ++j) r += iv.contains(s.eigenvalues(j));
  return r;
}

double hermitian_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  RVector w = eigenvalues(m);
  return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
}

RVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RVector();
  if (is_real(m)) {
    RMatrix a = m.real();
    return lapack::gesdd_values(a);
  }
  Matrix a = m;
  return lapack::gesdd_values(a);
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  return singular_values(m)(0);
}

Vector phase_aligned(const Vector& ref, const Vector& v) {
  cplx overlap = ref.dot(v);
  if (std::abs(overlap) == 0.0) return v;
  return v * (std::conj(overlap) / std::abs(overlap));
}

double aligned_distance(const Vector& ref, const Vector& v) { return (ref - phase_aligned(ref, v)).norm(); }

}  // namespace agsplab
