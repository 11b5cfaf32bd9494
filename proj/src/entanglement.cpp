#include "agsplab/entanglement.hpp"

#include <cmath>

#include "agsplab/spectral.hpp"

namespace agsplab {

namespace {

long ipow(int d, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= d;
  return r;
}

}  // namespace

Matrix state_matrix(const Vector& state, int cut, int n, int d) {
  if (cut < 0 || cut > n) throw InvalidArgument("cut outside the chain");
  long dl = ipow(d, cut), dr = ipow(d, n - cut);
  if (state.size() != dl * dr) throw InvalidArgument("state dimension does not match the lattice");
  return Eigen::Map<const Matrix>(state.data(), dr, dl).transpose();
}

SchmidtData schmidt_decompose(const Vector& state, int cut, int n, int d) {
  if (std::abs(state.norm() - 1.0) > 1e-10) throw InvalidArgument("state is not normalized");
  Matrix m = state_matrix(state, cut, n, d);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtData s;
  s.coefficients = svd.singularValues();
  s.left_vectors = svd.matrixU();
  s.right_vectors = svd.matrixV().conjugate();
  s.cut = cut;
  return s;
}

Vector product_state(const Vector& left, const Vector& right) {
  Vector out(left.size() * right.size());
  for (long i = 0; i < left.size(); ++i) out.segment(i * right.size(), right.size()) = left(i) * right;
  return out;
}

Vector reconstruct(const SchmidtData& s, long count) {
  long k = count < 0 ? s.coefficients.size() : std::min<long>(count, s.coefficients.size());
  long dl = s.left_vectors.rows(), dr = s.right_vectors.rows();
  Matrix m = Matrix::Zero(dl, dr);
  for (long j = 0; j < k; ++j) m += s.coefficients(j) * s.left_vectors.col(j) * s.right_vectors.col(j).transpose();
  Matrix t = m.transpose();
  return Eigen::Map<const Vector>(t.data(), dl * dr);
}

double entropy(const SchmidtData& s) {
  double e = 0;
  for (long j = 0; j < s.coefficients.size(); ++j) {
    double p = s.coefficients(j) * s.coefficients(j);
    if (p > 0) e -= p * std::log(p);
  }
  return e;
}

double renyi2(const SchmidtData& s) { return -std::log(s.coefficients.array().pow(4).sum()); }

Matrix reduced_density_left(const Vector& state, int cut, int n, int d) {
  Matrix m = state_matrix(state, cut, n, d);
  return m * m.adjoint();
}

double entropy_of_density(const Matrix& rho) {
  Matrix h = 0.5 * (rho + rho.adjoint());
  RVector w = eigenvalues(h);
  double e = 0;
  for (long j = 0; j < w.size(); ++j)
    if (w(j) > 0) e -= w(j) * std::log(w(j));
  return e;
}

double renyi2_of_density(const Matrix& rho) { return -std::log((rho * rho).trace().real()); }

double numerical_rank_tolerance(double largest) { return std::max(1e-10 * largest, 1e-12); }

long schmidt_rank(const SchmidtData& s) {
  if (s.coefficients.size() == 0) return 0;
  double tol = numerical_rank_tolerance(s.coefficients(0));
  return (s.coefficients.array() > tol).count();
}

long schmidt_rank(const Vector& state, int cut, int n, int d) {
  Vector u = state / state.norm();
  return schmidt_rank(schmidt_decompose(u, cut, n, d));
}

Vector truncate_schmidt(const SchmidtData& s, long D, bool normalize) {
  Vector v = reconstruct(s, D);
  if (normalize && v.norm() > 0) v /= v.norm();
  return v;
}

BoundRecord eckart_young_check(const Vector& psi, const Vector& psi_prime, int cut, int n, int d, double slack) {
  SchmidtData s = schmidt_decompose(psi, cut, n, d);
  long rank = schmidt_rank(psi_prime, cut, n, d);
  double tail = 0;
  for (long j = rank; j < s.coefficients.size(); ++j) tail += s.coefficients(j) * s.coefficients(j);
  return make_record("eckart-young", tail, (psi - psi_prime).squaredNorm(),
                     ctx({{"cut", double(cut)}, {"rank", double(rank)}}), slack);
}

Vector MpsState::contract() const {
  // rows: basis index of the sites contracted so far, cols: open bond
  Matrix acc = Matrix::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    long rows = acc.rows(), right = tensors[i][0].cols();
    Matrix next(rows * d, right);
    for (long r = 0; r < rows; ++r)
      for (int s = 0; s < d; ++s) next.row(r * d + s) = acc.row(r) * tensors[i][s];
    acc = std::move(next);
  }
  return acc.col(0);
}

double MpsState::left_canonical_defect() const {
  double worst = 0;
  for (int i = 0; i + 1 < n; ++i) {
    long right = tensors[i][0].cols();
    Matrix g = Matrix::Zero(right, right);
    for (int s = 0; s < d; ++s) g += tensors[i][s].adjoint() * tensors[i][s];
    worst = std::max(worst, (g - Matrix::Identity(right, right)).cwiseAbs().maxCoeff());
  }
  return worst;
}

MpsState mps_compress(const Vector& state, int n, long D, int d) {
  if (D < 1) throw InvalidArgument("bond dimension must be at least 1");
  if (std::abs(state.norm() - 1.0) > 1e-10) throw InvalidArgument("state is not normalized");
  MpsState mps;
  mps.n = n;
  mps.d = d;
  mps.tensors.resize(n);
  for (int bond = 1; bond < n; ++bond) {
    SchmidtData s = schmidt_decompose(state, bond, n, d);
    double tail = 0;
    for (long j = D; j < s.coefficients.size(); ++j) tail += s.coefficients(j) * s.coefficients(j);
    mps.truncation_weights.push_back(tail);
  }

  // c: D_prev x d^(n-i) remainder, site i is the most significant digit of the column index
  Matrix c = Eigen::Map<const Matrix>(state.data(), 1, state.size());
  for (int i = 0; i < n; ++i) {
    long left = c.rows();
    long rest = c.cols() / d;
    Matrix split(left * d, rest);
    for (long a = 0; a < left; ++a)
      for (int s = 0; s < d; ++s) split.row(a * d + s) = c.block(a, s * rest, 1, rest);
    if (i == n - 1) {
      mps.tensors[i].assign(d, Matrix(left, 1));
      for (long a = 0; a < left; ++a)
        for (int s = 0; s < d; ++s) mps.tensors[i][s](a, 0) = split(a * d + s, 0);
      break;
    }
    Eigen::BDCSVD<Matrix> svd(split, Eigen::ComputeThinU | Eigen::ComputeThinV);
    long keep = std::min<long>(D, svd.singularValues().size());
    Matrix u = svd.matrixU().leftCols(keep);
    mps.tensors[i].assign(d, Matrix(left, keep));
    for (long a = 0; a < left; ++a)
      for (int s = 0; s < d; ++s) mps.tensors[i][s].row(a) = u.row(a * d + s);
    c = svd.singularValues().head(keep).cast<cplx>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    mps.bond_dims.push_back(keep);
  }
  return mps;
}

BoundRecord claim7_check(const Vector& state, const MpsState& mps, long D) {
  double err = (state - mps.contract()).squaredNorm();
  double sum = 0;
  for (double w : mps.truncation_weights) sum += w;
  return make_record("claim7.mps", err, 2 * sum, ctx({{"n", double(mps.n)}, {"D", double(D)}}));
}

}  // namespace agsplab
