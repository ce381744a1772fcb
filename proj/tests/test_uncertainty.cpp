#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "heis/uncertainty.hpp"

using namespace heis;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("profile classification") {
  const std::vector<double> conv{1.0, 1.5, 1.75, 1.75 + 1e-12};
  CHECK(classify(conv) == Verdict::Converged);
  const std::vector<double> lin{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(classify(lin) == Verdict::Diverging);
  const std::vector<double> geo{1.0, 1.5, 1.75, 1.875, 1.9375};
  CHECK(classify(geo) == Verdict::Inconclusive);
  CHECK(to_string(Verdict::Diverging) == "diverging");
}

TEST_CASE("accumulated profiles are monotone and reject bad terms") {
  const std::vector<double> radii{1.0, 2.0, 3.0};
  const auto p = accumulate_profile(radii, 300, [](std::size_t i) { return 0.01 * i; },
                                    [](std::size_t i) { return std::exp(-0.001 * i); });
  for (std::size_t i = 1; i < p.partials.size(); ++i) CHECK(p.partials[i] >= p.partials[i - 1]);
  CHECK(p.increments().front() == p.partials.front());
  CHECK_THROWS(accumulate_profile(radii, 3, [](std::size_t) { return 0.0; }, [](std::size_t) { return -1.0; }));
  CHECK_THROWS(accumulate_profile(radii, 3, [](std::size_t) { return 0.0; },
                                  [](std::size_t) { return std::numeric_limits<double>::quiet_NaN(); }));
}

TEST_CASE("euclidean beurling functionals") {
  const Grid g(1, 10.0, 401);
  const auto f = sample(g, [](std::span<const double> y) { return Complex(std::exp(-y[0] * y[0] / 2)); });
  const auto fh = fourier_transform(f);
  for (std::size_t i = 0; i < g.size(); i += 37) CHECK(std::abs(fh.values[i] - f.values[i]) < 1e-12);
  const std::vector<double> radii{1, 2, 3, 4, 5, 6};
  const auto b = beurling_euclidean(f, fh, radii);
  CHECK(b.parseval_rel_err < 1e-12);
  CHECK(b.w0.verdict == Verdict::Diverging);
  auto doubled = fh;
  for (auto& v : doubled.values) v *= 2.0;
  CHECK_THROWS_AS(beurling_euclidean(f, doubled, radii), std::invalid_argument);
}

TEST_CASE("hedenmalm strip function of a gaussian") {
  EntireFn f = [](std::span<const Complex> z) { return std::exp(-z[0] * z[0]); };
  for (double z : {0.3, 1.0, 3.0}) {
    const auto F = hedenmalm_F(f, 1, z);
    CHECK(F.converged);
    // (2π)^{1/2} ∫ e^{-(1+ζ²)y²} dy
    CHECK(F.value.real() == Approx(std::sqrt(2 * kPi) * std::sqrt(kPi / (1 + z * z))).epsilon(1e-12));
    CHECK(std::abs(hedenmalm_G(F.value, 1, z) - std::sqrt(2.0) * kPi) < 1e-11);
  }
  const auto r = hedenmalm_F(f, 1, 2.0), inv = hedenmalm_F(f, 1, 0.5);
  CHECK(std::abs(r.value - std::conj(inv.value) / 2.0) < 1e-12);
  StripOptions quick;
  quick.budget = 100000;
  CHECK_FALSE(hedenmalm_F(f, 1, Complex(0, 1), quick).converged);
}

TEST_CASE("F_lambda of a heat slice") {
  const KernelParams p(0.5, 1.0, 1);
  EntireFn fl = [&](std::span<const Complex> z) { return heat_kernel(p, z); };
  const double pre = sinh_factor(0.5, 1.0) / (4 * kPi), kap = coth_factor(0.5, 1.0);
  const auto F = F_lambda(fl, 1, 1.0, 2.0);
  CHECK(F.value.real() == Approx(pre * pre * 4 * kPi / (kap * 5)).epsilon(1e-10));
  const auto G = F_lambda(fl, 1, 1.0, 0.5);
  CHECK(std::abs(F.value - std::conj(G.value) / 4.0) < 1e-10 * std::abs(F.value));
}

TEST_CASE("trace norm weight and heisenberg beurling profile") {
  const BasisSpec b(1, 1.0, 30);
  const auto fhat = hermite_semigroup(1.0, b);
  const TraceNormWeight W(fhat, 3.0, 0.05);
  CHECK(W(0.0) == Approx(schatten_norm(fhat, Schatten::One)).epsilon(1e-10));
  CHECK(W(2.0) > W(1.0));
  CHECK_THROWS(TraceNormWeight(fhat, 7.0, 0.05));
  const Grid g(2, 8.0, 81);
  const KernelParams p(1.0, 1.0, 1);
  const auto fl = sample(g, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, 1.0);
  const std::vector<double> radii{1, 2, 3, 4, 5, 6, 7};
  const auto prof = heisenberg_beurling(fhat, fl, radii);
  CHECK(prof.radii.size() == 6);
  CHECK_FALSE(prof.notes.empty());
  CHECK(prof.verdict == Verdict::Diverging);
}

TEST_CASE("hardy window") {
  CHECK(hardy_h(0.75, 0.0) == Approx(1.0 / 1.5));
  CHECK(hardy_h(0.75, 2.0) == Approx(2.0 / std::tanh(3.0)));
  const auto w = hardy_window(0.5, 1.0, 0.75);
  CHECK(w.certified);
  CHECK(w.threshold == Approx(1.0));
  CHECK(hardy_h(0.75, w.delta * 0.999) < w.threshold);
  CHECK_THROWS_AS(hardy_window(0.8, 1.0, 0.75), std::invalid_argument);
  const auto fin = hardy_beurling_integral(0.5, 0.75, 0.05, 1);
  CHECK(fin.finite);
  CHECK(fin.exponent < 0.0);
  CHECK(fin.value == Approx(fin.closed_form).epsilon(1e-10));
  CHECK(std::isinf(hardy_beurling_integral(0.5, 0.75, 10.0, 1).value));
}

TEST_CASE("cowling-price constant") {
  const auto r = cowling_price_bound(1.0, 40.0, 1);
  CHECK(r.analytic_C == Approx(std::pow(4 * kPi, -2)).epsilon(1e-14));
  CHECK(r.C == Approx(r.analytic_C).epsilon(1e-10));
  CHECK(r.lambda_integral_doubled == Approx(r.lambda_integral).epsilon(1e-10));
}

TEST_CASE("hermite projection bound and majorant") {
  const Grid g(1, 10.0, 401);
  const auto f = sample(g, [](std::span<const double> y) { return Complex(std::exp(-0.5 * (y[0] - 1) * (y[0] - 1))); });
  const auto norms = hermite_projection_norms(f, 10);
  double total = 0.0;
  for (double v : norms) total += v * v;
  CHECK(total == Approx(f.l2_norm_sq()).epsilon(1e-6));
  for (int k = 0; k <= 10; ++k) {
    const Complex z[1] = {Complex(0.5, 1.5)};
    CHECK(std::abs(hermite_projection(f, k, z)) <= hermite_projection_bound(k, 1, norms[k], z) * (1 + 1e-12));
  }
  const double y[1] = {1.2};
  const auto m = hermite_heat_majorant(0.8, y, 300);
  CHECK(m.closed_form == Approx(std::exp(1.44 / std::tanh(0.8)) / (2 * std::sinh(0.8))).epsilon(1e-14));
  CHECK(m.rel_err < 1e-10);
  CHECK_THROWS_AS(hermite_heat_majorant(0.1, y, 5), std::runtime_error);
}
