#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace agsplab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-10;
inline constexpr double kBoundSlack = 1e-9;
inline constexpr long kDefaultDimCeiling = 16384;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionCeilingExceeded : Error {
  using Error::Error;
};
struct DegenerateGroundState : Error {
  using Error::Error;
};
struct PreconditionFailed : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

// d^n ceiling, overridable through AGSPLAB_DIM_CEILING
long dimension_ceiling();
long checked_power(int d, int n);

struct BoundRecord {
  std::string bound_id;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  std::string context;
};
using Report = std::vector<BoundRecord>;

BoundRecord make_record(std::string id, double lhs, double rhs, std::string context = {},
                        double slack = kBoundSlack);
bool all_hold(const Report& r);
void append(Report& into, const Report& from);

// "key=value;key=value" context strings
std::string ctx(std::initializer_list<std::pair<const char*, double>> kv);

double hermiticity_defect(const Matrix& m);
bool is_real(const Matrix& m);

}  // namespace agsplab
