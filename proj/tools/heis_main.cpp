#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "heis/io.hpp"
#include "heis/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_summary(const heis::CheckReport& rep) {
  for (const auto& c : rep.checks)
    std::printf("%-4s %-55s lhs=%-12.6g rhs=%-12.6g rel=%-10.3g tol=%.3g\n", c.pass ? "ok" : "FAIL",
                c.name.c_str(), c.lhs, c.rhs, c.rel_err, c.tolerance);
  std::size_t failed = 0;
  for (const auto& c : rep.checks) failed += c.pass ? 0 : 1;
  std::printf("%s: %zu checks, %zu failed, %.2f s\n", rep.suite.c_str(), rep.checks.size(), failed,
              rep.wall_time);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg group uncertainty verification suites"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List suites, their anchors and default parameters");

  auto* run = app.add_subcommand("run", "Run one verification suite");
  heis::SuiteConfig cfg;
  std::string config_path;
  std::vector<double> lambdas;
  int n = 0, basis = 0, grid = 0, threads = -1;
  double extent = 0.0, tol = 0.0;
  std::uint64_t seed = 0;
  run->add_option("--suite", cfg.suite, "Suite name")->required();
  run->add_option("--config", config_path, "Key-value config file")->check(CLI::ExistingFile);
  run->add_option("--n", n, "Dimension n");
  run->add_option("--lambda", lambdas, "Frequency lambda (repeatable)")->allow_extra_args(false);
  run->add_option("--basis-size", basis, "Hermite truncation degree K");
  run->add_option("--grid-points", grid, "Grid points per axis (odd)");
  run->add_option("--extent", extent, "Grid half-width");
  run->add_option("--tol", tol, "Tolerance for equality checks");
  run->add_option("--seed", seed, "Seed for sampled unitaries");
  run->add_option("--out", cfg.out, "JSON report path");
  run->add_option("--csv-dir", cfg.csv_dir, "Directory for CSV profiles");
  run->add_option("--threads", threads, "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  if (app.got_subcommand("list")) {
    std::cout << heis::list_suites();
    return kExitPass;
  }

  heis::CheckReport rep;
  try {
    if (!config_path.empty()) heis::apply_config_text(cfg, heis::load_text(config_path));
    if (run->count("--n")) cfg.n = n;
    if (!lambdas.empty()) cfg.lambdas = lambdas;
    if (run->count("--basis-size")) cfg.basis_size = basis;
    if (run->count("--grid-points")) cfg.grid_points = grid;
    if (run->count("--extent")) cfg.extent = extent;
    if (run->count("--tol")) cfg.tol = tol;
    if (run->count("--seed")) cfg.seed = seed;
    if (run->count("--threads")) cfg.threads = threads;
    heis::validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    rep = heis::run_suite(cfg);
    heis::write_outputs(rep, cfg);
  } catch (const std::exception& e) {
    std::cerr << "heis: " << e.what() << "\n";
    return kExitFail;
  }
  print_summary(rep);
  return rep.all_pass() ? kExitPass : kExitFail;
}
