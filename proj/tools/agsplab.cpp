#include <CLI11.hpp>

#include "agsplab/experiment.hpp"
#include "agsplab/spectral.hpp"

int main(int argc, char** argv) {
  agsplab::ensure_reliable_blas(argv);
  CLI::App app{"area-law verification laboratory for long-range chains"};
  app.require_subcommand(1);
  agsplab::RunOptions opts;
  std::string out;
  std::uint64_t seed = 0;
  double tolerance = 0;
  app.add_option("--jobs", opts.jobs, "concurrent grid points")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized checks");
  auto* tol_opt = app.add_option("--tolerance", tolerance, "slack in lhs <= rhs + slack")->check(CLI::NonNegativeNumber);

  std::string config;
  const std::pair<const char*, const char*> commands[] = {
      {"run", "all checks and the entropy table"},
      {"verify", "inequality checks only"},
      {"entropy", "entropy table only"},
      {"sweep", "all checks over the [sweep] grid"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "experiment config file")->required();
    sub->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);

  if (*out_opt) opts.out = out;
  if (*seed_opt) opts.seed = seed;
  if (*tol_opt) opts.tolerance = tolerance;
  return agsplab::run_command(app.get_subcommands().front()->get_name(), config, opts);
}
