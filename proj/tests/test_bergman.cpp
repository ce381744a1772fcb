#include "doctest.h"

#include <cmath>
#include <numbers>

#include "heis/bergman.hpp"

using namespace heis;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("spectral coefficient storage") {
  const SpectralCoefficients c(SpectralCoefficients::Meaning::Norms, {2.0, 0.0, 1e-300});
  CHECK(c.value(0) == Approx(2.0));
  CHECK(c.value(1) == 0.0);
  CHECK(std::isinf(c.log_values[1]));
  const auto big = SpectralCoefficients::from_log(SpectralCoefficients::Meaning::Weights, {800.0});
  CHECK(std::isinf(big.value(0)));
  CHECK(multiplicity_factor(3, 2) == Approx(0.25));
  CHECK(multiplicity_factor(5, 1) == 1.0);
}

TEST_CASE("heat kernel norms agree with the weyl route and direct convolution") {
  const double lambda = 1.0, t = 0.5;
  const KernelParams p(t, lambda, 1);
  const Grid g(2, 8.0, 61);
  const auto f = sample(g, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
  const auto closed = heat_kernel_norms(t, lambda, 1, 4);
  const auto weyl = spectral_norms(weyl_transform(f, BasisSpec(1, lambda, 30)), 4);
  const auto direct = spectral_norms_direct(f, lambda, 2);
  for (int k = 0; k <= 4; ++k) CHECK(weyl.value(k) == Approx(closed.value(k)).epsilon(1e-8));
  for (int k = 0; k <= 2; ++k) CHECK(direct.value(k) == Approx(closed.value(k)).epsilon(1e-6));
  // e^{-2t(2k+n)|λ|}(2π)^n|λ|^{-n} binom(k+n-1,k)
  CHECK(closed.value(2) == Approx(std::exp(-5.0) * 2 * kPi).epsilon(1e-14));
  CHECK(heat_kernel_norms(t, lambda, 2, 3).value(3) == Approx(std::exp(-8.0) * 4 * kPi * kPi * 4).epsilon(1e-13));
}

TEST_CASE("segal-bargmann transform of the heat kernel is a heat kernel") {
  // p_b ∗ p_a = p_{a+b}, continued holomorphically
  const double lambda = 1.0;
  const Grid g(2, 9.0, 73);
  const KernelParams pb(0.3, lambda, 1), pab(0.8, lambda, 1);
  const auto f = sample(g, [&](std::span<const double> x) { return Complex(heat_kernel(pb, x)); }, 1, lambda);
  const std::vector<Complex> zw{Complex(0.4, 0.3), Complex(-0.2, 0.5)};
  const Complex F = segal_bargmann(f, 0.5, lambda, zw);
  CHECK(std::abs(F - heat_kernel(pab, zw)) < 1e-8 * std::abs(heat_kernel(pab, zw)));
}

TEST_CASE("gutzmer identity on a heat slice") {
  const double lambda = 1.0, t = 0.5;
  const KernelParams p(t, lambda, 1);
  EntireFn G = [&](std::span<const Complex> z) { return heat_kernel(p, z); };
  const auto opts = default_gutzmer_options(1, lambda);
  const auto norms = heat_kernel_norms(t, lambda, 1, 80);
  const double c = gutzmer_constant(1, lambda);
  CHECK(c == Approx(1.0 / (4 * kPi * kPi)).epsilon(1e-14));
  const double yv[2] = {0.5, -0.3};
  const auto lhs = gutzmer_lhs(G, lambda, 1, yv, opts);
  CHECK(lhs.value == Approx(gutzmer_rhs(norms, lambda, 1, yv, c)).epsilon(1e-6));
  CHECK_THROWS_AS(gutzmer_rhs(heat_kernel_norms(t, lambda, 1, 3), lambda, 1, yv, c), std::runtime_error);
}

TEST_CASE("orbital identity and independence of the real part") {
  const double lambda = 1.0;
  const BasisSpec b(1, lambda, 40);
  const auto fhat = hermite_semigroup(0.5, b);
  const auto norms = spectral_norms(fhat, 40);
  const auto rule = unitary_rule(1, 32, 1);
  const double c = orbital_constant(1, lambda);
  CHECK(c == Approx(1.0 / (2 * kPi)).epsilon(1e-14));
  double ref = 0.0;
  for (double x : {0.0, 0.6, -1.0}) {
    const std::vector<Complex> zw{Complex(x, 0.4), Complex(0.3, -0.2)};
    const auto o = orbital_hs_identity(fhat, zw, rule, norms, c);
    CHECK(o.lhs == Approx(o.rhs).epsilon(1e-6));
    const double inv = std::exp(lambda * (0.3 * 0.4 - (-0.2) * x)) * o.lhs;
    if (x == 0.0) ref = inv;
    CHECK(inv == Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("weight coefficients: heat weight and fubini route") {
  const double lambda = 1.0, t = 0.5;
  const auto C = weight_to_coefficients(heat_weight(t, lambda, 1), 6);
  for (int k = 0; k <= 6; ++k) CHECK(C.value(k) == Approx(0.25 * std::exp(2 * t * (2 * k + 1))).epsilon(1e-8));
  const auto C2 = weight_to_coefficients(heat_weight(t, lambda, 2), 3);
  CHECK(C2.value(3) == Approx(std::exp(8.0) / 16).epsilon(1e-8));
  // 4^{-n} ∫ tⁿ e^{-t²/2 + t(2k+n)} dt, reference values in 30-digit arithmetic
  const auto S = superposition_coefficients(2.0, 1.0, 1, 10);
  CHECK(S.value(0) == Approx(1.11926295292592362).epsilon(1e-12));
  CHECK(S.value(3) == Approx(191576744746.077006).epsilon(1e-12));
  CHECK(S.value(10) == Approx(7.60645844929438514e96).epsilon(1e-11));
  const auto S2 = superposition_coefficients(2.0, 1.0, 2, 2);
  CHECK(S2.value(0) == Approx(5.78132740972692271).epsilon(1e-12));
  CHECK(S2.value(2) == Approx(380603125.036262053).epsilon(1e-12));
  // a slowly decaying weight cannot be certified
  RadialWeight flat = heat_weight(t, lambda, 1);
  flat.radial = [](double r) { return 1.0 / (1 + r * r); };
  flat.radial_growth = [](double r) { return std::exp(r * r) / (1 + r * r); };
  CHECK_THROWS_AS(weight_to_coefficients(flat, 2), std::runtime_error);
}

TEST_CASE("kernel from weight") {
  const double lambda = 1.0, t = 0.3;
  const std::vector<double> logs = [&] {
    std::vector<double> v;
    for (int k = 0; k <= 60; ++k) v.push_back(2 * t * (2 * k + 1));
    return v;
  }();
  const auto C = SpectralCoefficients::from_log(SpectralCoefficients::Meaning::Weights, logs);
  const std::vector<Complex> zw{Complex(0.5, 0.2), Complex(-0.4, 0.1)};
  const Complex q = kernel_from_weight(C, lambda, 1, zw, 60);
  const Complex ref = heat_kernel(KernelParams(t, lambda, 1), zw);
  CHECK(std::abs(q - ref) < 1e-10 * std::abs(ref));
  CHECK_THROWS_AS(kernel_from_weight(C, lambda, 1, zw, 2), std::runtime_error);
}

TEST_CASE("reproducing kernel of the heat transform") {
  const double a = 0.5, lambda = 1.0;
  const std::vector<Complex> P{Complex(0.3, 0.2), Complex(-0.5, 0.1)}, Q{Complex(-0.1, -0.4), Complex(0.6, 0.3)};
  const Complex kpq = reproducing_kernel_heat(a, lambda, 1, P, Q);
  const Complex kqp = reproducing_kernel_heat(a, lambda, 1, Q, P);
  CHECK(std::abs(kpq - std::conj(kqp)) < 1e-14 * std::abs(kpq));
  const KernelParams p(a, lambda, 1);
  EntireFn q = [&](std::span<const Complex> z) { return heat_kernel(p, z); };
  const Complex quad = reproducing_kernel(q, lambda, Grid(2, 9.0, 97), P, Q);
  CHECK(std::abs(quad - kpq) < 1e-9 * std::abs(kpq));
}

TEST_CASE("bergman isometry: series ratio and direct tube quadrature") {
  const double lambda = 1.0, a = 0.25;
  const Grid g(2, 8.0, 65);
  const auto f = sample(g, [](std::span<const double> x) {
    return std::exp(-0.5 * ((x[0] - 0.4) * (x[0] - 0.4) + x[1] * x[1])) * Complex(1.0, 0.3 * x[1]);
  }, 1, lambda);
  IsometryOptions opts;
  opts.K = 40;
  opts.kmax = 40;
  const auto s = bergman_isometry(f, a, lambda, IsometryMode::Series, 0.25, opts);
  CHECK(s.lhs == Approx(0.25 * s.norm_sq).epsilon(1e-6));
  CHECK(s.rhs == Approx(0.25 * s.norm_sq).epsilon(1e-14));
  opts.tube.real_points = 33;
  opts.tube.imag_points = 17;
  const auto d = bergman_isometry(f, a, lambda, IsometryMode::Direct4D, 0.25, opts);
  CHECK(d.lhs == Approx(s.lhs).epsilon(2e-2));
  // reproducing property on the tube
  const auto T = segal_bargmann_tube(f, a, lambda, opts.tube);
  const std::vector<Complex> P{Complex(0.2, 0.1), Complex(-0.3, 0.2)};
  const Complex F = segal_bargmann(f, a, lambda, P);
  CHECK(std::abs(reproduce_at(T, a, lambda, P) - 0.25 * F) < 2e-2 * std::abs(0.25 * F));
}
