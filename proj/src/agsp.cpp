#include "agsplab/agsp.hpp"

#include <cmath>

#include "agsplab/kernels.hpp"

namespace agsplab {

double chebyshev_T(int m, double x) {
  if (m < 0) throw InvalidArgument("Chebyshev degree must be non-negative");
  if (m == 0) return 1;
  double prev = 1, cur = x;
  for (int k = 1; k < m; ++k) {
    double next = 2 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Report chebyshev_lemma11_check(const std::vector<int>& degrees, const std::vector<double>& points) {
  Report out;
  for (int m : degrees)
    for (double x : points) {
      double t = std::abs(chebyshev_T(m, x));
      std::string c = ctx({{"m", double(m)}, {"x", x}});
      double ax = std::abs(x);
      if (ax <= 1) {
        out.push_back(make_record("cheb.lemma11", t, 1.0, c));
      } else if (m >= 1) {
        double lower = 0.5 * std::exp(2 * m * std::sqrt((ax - 1) / (ax + 1)));
        out.push_back(make_record("cheb.lemma11", lower, t, c));
        out.push_back(make_record("cheb.lemma11", t, 0.5 * std::pow(2 * ax, m), c));
      }
    }
  return out;
}

double filter_value(int m, double x, const FilterWindow& w) {
  double span = w.width - w.gap;
  double y = (2 * x - (w.width + w.gap)) / span;
  double y0 = -(w.width + w.gap) / span;
  return chebyshev_T(m, y) / chebyshev_T(m, y0);
}

double chebyshev_bound(int m, double gap, double width) { return 2 * std::exp(-2.0 * m * std::sqrt(gap / width)); }

AgspFilter agsp_filter(const SpectralData& spectrum, int m) {
  long dim = spectrum.eigenvalues.size();
  if (dim < 2) throw InvalidArgument("filter needs at least two levels");
  AgspFilter f;
  f.m = m;
  f.window.ground = spectrum.eigenvalues(0);
  f.window.gap = spectrum.eigenvalues(1) - spectrum.eigenvalues(0);
  f.window.width = spectrum.eigenvalues(dim - 1) - spectrum.eigenvalues(0);
  if (f.window.gap <= kDegeneracyTol) throw DegenerateGroundState("filtered spectrum is gapless");
  if (!(f.window.gap < f.window.width)) throw InvalidArgument("gap must be smaller than the spectral width");
  RVector values(dim);
  for (long j = 0; j < dim; ++j) {
    values(j) = filter_value(m, spectrum.eigenvalues(j) - f.window.ground, f.window);
    if (j > 0) f.sup_excited = std::max(f.sup_excited, std::abs(values(j)));
  }
  f.K = spectrum.eigenvectors * values.cast<cplx>().asDiagonal() * spectrum.eigenvectors.adjoint();
  f.fixed_state = spectrum.eigenvectors.col(0);
  f.cheb_bound = chebyshev_bound(m, f.window.gap, f.window.width);
  return f;
}

AgspFilter agsp_filter(const EffectiveHamiltonian& eff, int m) { return agsp_filter(eigendecompose(eff.dense()), m); }

Matrix agsp_filter_clenshaw(const Matrix& h, const FilterWindow& w, int m) {
  long dim = h.rows();
  Matrix id = Matrix::Identity(dim, dim);
  double span = w.width - w.gap;
  Matrix y = (2.0 * (h - w.ground * id) - (w.width + w.gap) * id) / span;
  double cm = 1.0 / chebyshev_T(m, -(w.width + w.gap) / span);
  if (m == 0) return cm * id;
  // coefficients are c_m = cm and zero otherwise
  Matrix b1 = cm * id, b2 = Matrix::Zero(dim, dim);
  for (int k = m - 1; k >= 1; --k) {
    Matrix b = 2.0 * y * b1 - b2;
    b2 = std::move(b1);
    b1 = std::move(b);
  }
  return y * b1 - b2;
}

SchmidtRankResult operator_schmidt_rank(const Matrix& op, int cut, int n, int d) {
  long dl = 1, dr = 1;
  for (int i = 0; i < cut; ++i) dl *= d;
  for (int i = cut; i < n; ++i) dr *= d;
  if (op.rows() != dl * dr || op.cols() != dl * dr) throw InvalidArgument("operator does not match the lattice");
  SchmidtRankResult r;
  r.singular_values = singular_values(kernels::omp::rearrange(op, dl, dr));
  double top = r.singular_values.size() ? r.singular_values(0) : 0.0;
  r.tolerance_used = numerical_rank_tolerance(top);
  r.rank = (r.singular_values.array() > r.tolerance_used).count();
  return r;
}

AgspReport measure_agsp(const Matrix& K, const Vector& target, const Vector& fixed, int cut, int n, int d) {
  if ((K * fixed - fixed).norm() > 1e-8) throw PreconditionFailed("fixed state is not invariant under K");
  AgspReport r;
  r.delta_K = aligned_distance(target, fixed);
  Matrix a = K - (K * fixed) * fixed.adjoint();
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (hermiticity_defect(a) <= 1e-10 * scale)
    r.epsilon_K = hermitian_norm(0.5 * (a + a.adjoint()));
  else
    r.epsilon_K = operator_norm(a);
  r.D_K = operator_schmidt_rank(K, cut, n, d).rank;
  r.cheb_bound = std::numeric_limits<double>::quiet_NaN();
  return r;
}

double lemma8_bound(int d, int l, int k, int m) { return std::pow(2.0 + std::pow(2.0 * d * l, k), m); }

double prop4_bound(int d, int q, int l, int k, int m) {
  double inner = std::exp(1.0) * (q + 1) * (q + 1) * std::pow(2.0 * d * l, k);
  return std::pow(d, q * l) * std::pow(q + m + 1.0, q + 1) * std::pow(inner, double(m) / (q + 1));
}

bool prop4_assumption(int d, int q, int l, int m) { return std::pow(q + m + 1.0, q + 1) <= std::pow(d, q * l); }

Report schmidt_rank_bound_check(const TruncatedHamiltonian& t, const EffectiveHamiltonian* eff, int m_max) {
  const auto& b = t.blocks;
  int n = t.lattice.n, d = t.lattice.d;
  Report out;
  auto run = [&](const Matrix& h, double which) {
    Matrix power = h;
    for (int m = 1; m <= m_max; ++m) {
      if (m > 1) power = (power * h).eval();
      double sr = operator_schmidt_rank(power, b.cut, n, d).rank;
      out.push_back(make_record("sr.lemma8", sr, lemma8_bound(d, b.l, t.k, m), ctx({{"eff", which}, {"m", double(m)}})));
      double first = prop4_bound(d, b.q, b.l, t.k, m);
      out.push_back(make_record("sr.prop4", sr, first, ctx({{"eff", which}, {"m", double(m)}, {"branch", 1}})));
      if (prop4_assumption(d, b.q, b.l, m)) {
        double inner = std::exp(1.0) * (b.q + 1) * (b.q + 1) * std::pow(2.0 * d * b.l, t.k);
        double second = std::pow(d, 2 * b.q * b.l) * std::pow(inner, double(m) / (b.q + 1));
        out.push_back(make_record("sr.prop4", sr, second, ctx({{"eff", which}, {"m", double(m)}, {"branch", 2}})));
      }
    }
  };
  run(t.dense(), 0);
  if (eff) run(eff->dense(), 1);
  return out;
}

BootstrapResult bootstrap_state(const Matrix& K, const AgspReport& report, const Vector& fixed, const Vector& target,
                                int cut, int n, int d) {
  BootstrapResult res;
  double D = static_cast<double>(report.D_K);
  res.precondition_met = report.epsilon_K * report.epsilon_K * D <= 0.5;
  if (!res.precondition_met) return res;

  SchmidtData s = schmidt_decompose(fixed, cut, n, d);
  res.mu1 = s.coefficients(0);
  res.tie = s.coefficients.size() > 1 && s.coefficients(0) - s.coefficients(1) <= 1e-12;
  Vector p1 = product_state(s.left_vectors.col(0), s.right_vectors.col(0));
  Vector kp = K * p1;
  res.state = kp / kp.norm();
  res.schmidt_rank = schmidt_rank(res.state, cut, n, d);
  res.distance = aligned_distance(target, res.state);
  res.distance_bound = report.epsilon_K * std::sqrt(2 * D) + report.delta_K;
  std::string c = ctx({{"m", double(report.m)}, {"D", D}});
  res.records.push_back(make_record("bootstrap.mu1", 1.0 / std::sqrt(2 * D), res.mu1, c));
  res.records.push_back(make_record("prop2.distance", res.distance, res.distance_bound, c));
  res.records.push_back(make_record("bootstrap.rank", double(res.schmidt_rank), D, c));
  return res;
}

}  // namespace agsplab
