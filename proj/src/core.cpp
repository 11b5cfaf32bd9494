#include "agsplab/core.hpp"

#include <cstdlib>
#include <limits>
#include <sstream>

namespace agsplab {

long dimension_ceiling() {
  const char* env = std::getenv("AGSPLAB_DIM_CEILING");
  if (!env || !*env) return kDefaultDimCeiling;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw InvalidArgument("AGSPLAB_DIM_CEILING must be a positive integer");
  return v;
}

long checked_power(int d, int n) {
  long ceiling = dimension_ceiling();
  long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= d;
    if (dim > ceiling)
      throw DimensionCeilingExceeded("dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                     " exceeds ceiling " + std::to_string(ceiling));
  }
  return dim;
}

BoundRecord make_record(std::string id, double lhs, double rhs, std::string context, double slack) {
  BoundRecord r;
  r.bound_id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.holds = lhs <= rhs + slack;
  r.context = std::move(context);
  return r;
}

bool all_hold(const Report& r) {
  for (const auto& b : r)
    if (!b.holds) return false;
  return true;
}

void append(Report& into, const Report& from) { into.insert(into.end(), from.begin(), from.end()); }

std::string ctx(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ';';
    first = false;
    os << k << '=' << v;
  }
  return os.str();
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_real(const Matrix& m) {
  const cplx* p = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (p[i].imag() != 0.0) return false;
  return true;
}

}  // namespace agsplab
