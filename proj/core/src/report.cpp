#include "heis/report.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace heis {

namespace {

using Json = nlohmann::ordered_json;

// JSON has no infinities or NaN; they are written as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double rel(double abs_err, double target) {
  if (abs_err == 0.0) return 0.0;
  if (target == 0.0) return std::numeric_limits<double>::infinity();
  return abs_err / std::abs(target);
}

}  // namespace

std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Equal: return "equal";
    case CheckMode::LessEqual: return "le";
    case CheckMode::Boolean: return "boolean";
  }
  return "equal";
}

bool passes(const CheckRecord& r) {
  if (std::isnan(r.abs_err) || std::isnan(r.rel_err)) return false;
  return r.rel_err <= r.tolerance || (std::abs(r.rhs) <= r.tolerance && r.abs_err <= r.tolerance);
}

CheckRecord check_equal(std::string name, std::string anchor, double lhs, double rhs, double tol,
                        std::string notes) {
  CheckRecord r{std::move(name), std::move(anchor), lhs, rhs, 0, 0, tol, false, std::move(notes),
                CheckMode::Equal};
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = rel(r.abs_err, rhs);
  r.pass = passes(r);
  return r;
}

CheckRecord check_le(std::string name, std::string anchor, double lhs, double rhs, double tol,
                     std::string notes) {
  CheckRecord r{std::move(name), std::move(anchor), lhs, rhs, 0, 0, tol, false, std::move(notes),
                CheckMode::LessEqual};
  r.abs_err = std::isnan(lhs) || std::isnan(rhs) ? std::numeric_limits<double>::quiet_NaN()
                                                  : std::max(0.0, lhs - rhs);
  r.rel_err = rel(r.abs_err, rhs);
  r.pass = passes(r);
  return r;
}

CheckRecord check_true(std::string name, std::string anchor, bool holds, std::string notes) {
  CheckRecord r{std::move(name), std::move(anchor), holds ? 1.0 : 0.0, 1.0, holds ? 0.0 : 1.0,
                holds ? 0.0 : 1.0, 0.0, holds, std::move(notes), CheckMode::Boolean};
  return r;
}

bool CheckReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckRecord* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string CheckReport::to_json(bool include_timing) const {
  Json j;
  j["suite"] = suite;
  Json params = Json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  j["parameters"] = params;
  Json checks_j = Json::array();
  for (const auto& c : checks) {
    checks_j.push_back({{"name", c.name},
                        {"anchor", c.anchor},
                        {"mode", to_string(c.mode)},
                        {"lhs", number(c.lhs)},
                        {"rhs", number(c.rhs)},
                        {"abs_err", number(c.abs_err)},
                        {"rel_err", number(c.rel_err)},
                        {"tolerance", number(c.tolerance)},
                        {"pass", c.pass},
                        {"notes", c.notes}});
  }
  j["checks"] = checks_j;
  Json cal = Json::array();
  for (const auto& c : calibration)
    cal.push_back({{"name", c.name},
                   {"value", number(c.value)},
                   {"analytic", number(c.analytic)},
                   {"reference", c.reference}});
  j["calibration"] = cal;
  Json prof = Json::array();
  for (const auto& [name, p] : profiles) {
    Json radii = Json::array(), partials = Json::array();
    for (double r : p.radii) radii.push_back(number(r));
    for (double v : p.partials) partials.push_back(number(v));
    prof.push_back({{"name", name},
                    {"verdict", to_string(p.verdict)},
                    {"notes", p.notes},
                    {"radii", radii},
                    {"partials", partials}});
  }
  j["profiles"] = prof;
  j["all_pass"] = all_pass();
  if (include_timing) j["timing"] = {{"wall_seconds", wall_time}};
  return j.dump(2);
}

}  // namespace heis
