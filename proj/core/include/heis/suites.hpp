#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heis/report.hpp"

namespace heis {

/// Parameters of one suite run. Zero-valued grid fields select the suite default.
struct SuiteConfig {
  std::string suite;
  int n = 1;
  std::vector<double> lambdas;  // empty: the suite's default list
  int basis_size = 48;
  int grid_points = 0;
  double extent = 0.0;
  std::optional<double> tol;                 // replaces every equality tolerance
  std::map<std::string, double> tolerances;  // per-check overrides by name
  std::uint64_t seed = 1;
  std::string out;
  std::string csv_dir;
  int threads = 0;  // 0 keeps the current worker count
};

struct SuiteInfo {
  std::string name;
  std::string anchor;
  std::string summary;
  std::string defaults;
  std::vector<int> dimensions;
  std::vector<double> lambdas;  // supported n
};

const std::vector<SuiteInfo>& suite_catalog();
const SuiteInfo* find_suite(const std::string& name);

/// Suite names, anchors and defaults, one suite per line.
std::string list_suites();

/// Throws std::invalid_argument for an unknown suite or invalid parameters.
void validate(const SuiteConfig& cfg);

/// Runs the suite; never throws on check failure (failures are recorded).
CheckReport run_suite(const SuiteConfig& cfg);

/// Writes the JSON report to cfg.out and profiles to cfg.csv_dir/<suite>_<name>.csv
/// when those paths are set.
void write_outputs(const CheckReport& report, const SuiteConfig& cfg);

/// Applies a config file on top of cfg: keys from [global], then from the
/// section named after cfg.suite. Keys: n, lambda (comma separated),
/// basis-size, grid-points, extent, tol, tol.<check name>, seed, out, csv-dir,
/// threads. '#' and ';' start comments.
void apply_config_text(SuiteConfig& cfg, const std::string& text);

}  // namespace heis
