#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heis/uncertainty.hpp"

namespace heis {

enum class CheckMode { Equal, LessEqual, Boolean };

std::string to_string(CheckMode m);

/// One verified relation. pass ⇔ rel_err ≤ tolerance, or abs_err ≤ tolerance
/// when the target itself is below tolerance in magnitude.
struct CheckRecord {
  std::string name;
  std::string anchor;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string notes;
  CheckMode mode = CheckMode::Equal;
};

/// |lhs − rhs| against tol.
CheckRecord check_equal(std::string name, std::string anchor, double lhs, double rhs, double tol,
                        std::string notes = {});
/// lhs ≤ rhs up to tol: the excess max(0, lhs − rhs) plays the role of the error.
CheckRecord check_le(std::string name, std::string anchor, double lhs, double rhs, double tol = 0.0,
                     std::string notes = {});
/// Boolean property: lhs = 1 if it holds, compared with rhs = 1 at tolerance 0.
CheckRecord check_true(std::string name, std::string anchor, bool holds, std::string notes = {});

/// Recomputes pass from the error fields.
bool passes(const CheckRecord& r);

struct Calibration {
  std::string name;
  double value = 0.0;
  double analytic = 0.0;  // NaN when no analytic value is known
  std::string reference;
};

struct CheckReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<CheckRecord> checks;
  std::vector<Calibration> calibration;
  std::vector<std::pair<std::string, FunctionalProfile>> profiles;
  double wall_time = 0.0;

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  bool all_pass() const;
  const CheckRecord* find(const std::string& name) const;

  /// JSON document; timing is the only field that varies between identical runs
  /// and is left out when include_timing is false.
  std::string to_json(bool include_timing = true) const;
};

}  // namespace heis
