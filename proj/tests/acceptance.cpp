// Acceptance gate: runs the verification suites with fixed parameters and
// re-judges their check records against tolerances pinned here.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "heis/suites.hpp"

using namespace heis;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

/// Largest error over checks whose name starts with prefix. Equality checks
/// use the relative error, or the absolute error when the target is zero.
/// LessEqual checks use the excess lhs − rhs. Requires at least `expected`
/// matches; boolean checks must hold.
Outcome judge(const CheckReport& rep, const std::string& prefix, std::size_t expected, double tol) {
  double worst = 0.0;
  std::size_t count = 0;
  bool ok = true;
  for (const auto& c : rep.checks) {
    if (c.name.rfind(prefix, 0) != 0) continue;
    ++count;
    double err = 0.0;
    switch (c.mode) {
      case CheckMode::Equal:
        err = c.rhs == 0.0 ? c.abs_err : c.rel_err;
        break;
      case CheckMode::LessEqual:
        err = std::max(0.0, c.lhs - c.rhs);
        break;
      case CheckMode::Boolean:
        err = c.lhs == 1.0 ? 0.0 : 1.0;
        break;
    }
    if (!(err <= tol)) ok = false;
    worst = std::max(worst, std::isnan(err) ? INFINITY : err);
  }
  if (count < expected) ok = false;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %zu checks, worst %.3g (tol %.3g)", prefix.c_str(), count, worst, tol);
  return {ok, buf};
}

Outcome all_of(const std::vector<Outcome>& parts) {
  Outcome o{true, {}};
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    o.detail += (o.detail.empty() ? "" : "; ") + p.detail;
  }
  return o;
}

CheckReport run(const std::string& suite, std::vector<double> lambdas = {}, int basis = 48, int threads = 0) {
  SuiteConfig c;
  c.suite = suite;
  c.lambdas = std::move(lambdas);
  c.basis_size = basis;
  c.seed = 1;
  c.threads = threads;
  return run_suite(c);
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::printf("[%s] %2d %-34s %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  const auto plancherel = run("plancherel", {0.5, 1.0, 2.0}, 48);
  report(1, "Weyl-Plancherel", judge(plancherel, "plancherel/", 9, 1e-5));
  report(2, "Weyl inversion roundtrip", judge(plancherel, "inversion-sup-error", 1, 1e-4));

  const auto semigroup = run("semigroup", {1.0}, 32);
  report(3, "heat kernel series", judge(semigroup, "heat-series/", 6, 1e-10));
  report(4, "semigroup and transform", judge(semigroup, "transform-of-heat-kernel/", 2, 1e-5));

  const auto kernels = run("kernels");
  report(5, "homomorphism and orthogonality",
         all_of({judge(kernels, "homomorphism", 1, 1e-4), judge(kernels, "laguerre-orthogonality/", 9, 1e-4)}));

  const auto gutzmer = run("gutzmer");
  report(6, "Gutzmer identity",
         all_of({judge(gutzmer, "identity/r=", 5, 1e-3), judge(gutzmer, "calibrated-constant-vs-analytic", 1, 1e-6)}));

  const auto orbital = run("orbital");
  report(7, "orbital HS identity",
         all_of({judge(orbital, "identity/", 5, 1e-3), judge(orbital, "independence-of-real-part/", 4, 1e-3)}));

  const auto isometry = run("isometry");
  report(8, "twisted Bergman isometry",
         all_of({judge(isometry, "series-ratio/", 5, 1e-4), judge(isometry, "direct-vs-series/", 2, 2e-2)}));

  const auto weights = run("weights");
  report(9, "heat-weight calibration", judge(weights, "heat-weight/k=", 11, 1e-6));
  report(10, "superposition lower bound",
         all_of({judge(weights, "superposition-lower-bound-fitted", 1, 0.0),
                 judge(weights, "superposition-lower-bound-saddle-constant", 1, 0.0)}));

  const auto strip = run("strip");
  report(11, "strip functional equation",
         all_of({judge(strip, "functional-equation/", 4, 1e-10), judge(strip, "G-constancy", 1, 1e-10),
                 judge(strip, "blow-up-toward-", 2, 0.0)}));
  report(12, "F_lambda functional equation", judge(strip, "F_lambda-functional-equation/", 4, 1e-8));

  const auto hb = run("heisenberg-beurling");
  report(13, "Heisenberg-Beurling",
         all_of({judge(hb, "heat-kernel-profile-diverging", 1, 0.0), judge(hb, "zero-profile-converged", 1, 0.0),
                 judge(hb, "majorant-consistency", 1, 1e-9)}));

  const auto hermite = run("hermite-beurling");
  report(14, "Hermite projection and Gaussian",
         all_of({judge(hermite, "projection-bound", 1, 1e-9), judge(hermite, "gaussian-profile-slope", 1, 0.05),
                 judge(hermite, "gaussian-profile-diverging", 1, 0.0)}));

  const auto hardy = run("hardy-window");
  report(15, "Hardy window and majorant",
         all_of({judge(hardy, "window-certificate", 1, 0.0), judge(hardy, "majorant/", 2, 1e-8)}));

  {
    const int wide = std::max(2u, std::thread::hardware_concurrency());
    Outcome o{true, {}};
    for (const char* suite : {"gutzmer", "orbital", "strip"}) {
      const auto a = run(suite, {}, 48, 1).to_json(false);
      const auto b = run(suite, {}, 48, wide).to_json(false);
      const auto c = run(suite, {}, 48, 1).to_json(false);
      const bool same = a == b && a == c;
      o.pass = o.pass && same;
      o.detail += std::string(o.detail.empty() ? "" : "; ") + suite + (same ? " identical" : " differs");
    }
    o.detail += " (1 vs " + std::to_string(wide) + " workers)";
    report(16, "determinism", o);
  }

  std::printf("%d of 16 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
