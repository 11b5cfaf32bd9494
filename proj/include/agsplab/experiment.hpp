#pragma once

#include <map>
#include <optional>

#include "agsplab/config.hpp"
#include "agsplab/entropy_bound.hpp"

namespace agsplab {

Hamiltonian build_model(const ExperimentConfig& c);

// every registered inequality on one configuration; failures are records
Report verify_all(const ExperimentConfig& c);

struct EntropyRow {
  int n = 0;
  int cut = 0;
  double S = 0;
  double S2 = 0;
  long schmidt_rank = 0;
  std::vector<std::pair<long, double>> err2;  // (D, ||psi - psi_D||^2)
};

Vector model_ground_state(const Hamiltonian& h);
EntropyRow entropy_row(const ExperimentConfig& c);

// bound_id -> statement of the inequality
const std::map<std::string, std::string>& bound_registry();

struct PointOutput {
  GridPoint point;
  Report records;
  std::optional<EntropyRow> entropy;
};

void write_results_csv(const std::string& path, const std::vector<PointOutput>& points, double tolerance);
void write_summary(const std::string& path, const std::vector<PointOutput>& points, double tolerance);
void write_entropy_csv(const std::string& path, const std::vector<PointOutput>& points);

struct RunOptions {
  int jobs = 1;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

// "run", "verify", "entropy" or "sweep"; returns the process exit status
int run_command(const std::string& command, const std::string& config_path, const RunOptions& opts);

}  // namespace agsplab
