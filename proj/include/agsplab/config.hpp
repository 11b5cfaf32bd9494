#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "agsplab/core.hpp"

namespace agsplab {

struct ConfigError : Error {
  int line;
  ConfigError(int line_, const std::string& msg)
      : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg), line(line_) {}
};

struct RawEntry {
  std::string value;
  int line = 0;
};

struct RawConfig {
  std::map<std::string, std::map<std::string, RawEntry>> sections;
  std::vector<std::pair<std::string, RawEntry>> sweep;  // "section.key" in file order
  std::string base_dir = ".";
};

RawConfig parse_config_text(const std::string& text);
RawConfig load_config(const std::string& path);

struct ModelConfig {
  std::string family = "ising";
  int n = 0;
  double alpha = 3;
  double J = 1;
  double B = 0;
  // fermion chain
  double A = 1;
  double Bpair = 0;
  double Jtilde = -1;  // defaults to the largest coupling magnitude
  double mu = 0;       // on-site mu * Z
  std::string A_table;
  std::string Bpair_table;
};

struct ExperimentConfig {
  ModelConfig model;
  int q = 2;
  int l = 1;
  std::optional<int> cut;
  double tau = 6;
  std::vector<double> tau_grid;
  int m = 8;
  std::vector<int> m_grid;
  int sr_m_max = 3;
  int p_max = 32;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  double tolerance = kBoundSlack;
  std::vector<long> bond_dims{1, 2, 4, 8, 16};
  std::string base_dir = ".";
};

ExperimentConfig to_config(const RawConfig& raw);

struct GridPoint {
  std::vector<std::pair<std::string, std::string>> swept;
  ExperimentConfig config;
};

// cartesian product of the [sweep] lists, first key varying slowest; one point without a sweep
std::vector<GridPoint> expand_sweep(const RawConfig& raw);

}  // namespace agsplab
