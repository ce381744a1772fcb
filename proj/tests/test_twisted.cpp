#include "doctest.h"

#include <cmath>
#include <numbers>

#include "heis/twisted.hpp"

using namespace heis;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

namespace {

// Closed form written out independently of the library.
double heat_oracle(double a, double lambda, double rho2) {
  const double l = std::abs(lambda);
  return l / (4 * kPi * std::sinh(a * l)) * std::exp(-0.25 * l / std::tanh(a * l) * rho2);
}

SampledFunction gauss(const Grid& g, double x0, double u0, double lambda) {
  return sample(g, [=](std::span<const double> p) {
    return Complex(std::exp(-0.5 * ((p[0] - x0) * (p[0] - x0) + (p[1] - u0) * (p[1] - u0))));
  }, 1, lambda);
}

}  // namespace

TEST_CASE("heat kernel closed form") {
  for (double lambda : {0.5, 1.0, -2.0}) {
    const KernelParams p(0.7, lambda, 1);
    const std::vector<double> x{0.3, -1.1};
    CHECK(heat_kernel(p, x) == Approx(heat_oracle(0.7, lambda, 0.09 + 1.21)).epsilon(1e-14));
  }
  // n = 2 factorises
  const KernelParams p2(0.4, 1.5, 2);
  const std::vector<double> x2{0.3, 0.2, -0.5, 0.1};
  CHECK(heat_kernel(p2, x2) == Approx(heat_oracle(0.4, 1.5, 0.13) * heat_oracle(0.4, 1.5, 0.26)).epsilon(1e-13));
  // small aλ uses the series branch and stays continuous
  CHECK(sinh_factor(1.0, 1e-6) == Approx(1.0).epsilon(1e-11));
  CHECK(coth_factor(2.0, 1e-6) == Approx(0.5).epsilon(1e-11));
}

TEST_CASE("heat kernel series converges to the closed form, also off the real axis") {
  const KernelParams p(0.5, 1.0, 1);
  const std::vector<Complex> z{Complex(0.3, 0.4), Complex(-0.6, 0.2)};
  CHECK(std::abs(heat_kernel_series(p, z, 60) - heat_kernel(p, z)) < 1e-12 * std::abs(heat_kernel(p, z)));
  const KernelParams p2(1.0, 0.7, 2);
  const std::vector<Complex> z2{0.3, 0.2, -0.5, 0.1};
  CHECK(std::abs(heat_kernel_series(p2, z2, 60) - heat_kernel(p2, z2)) < 1e-12 * std::abs(heat_kernel(p2, z2)));
}

TEST_CASE("poisson kernel tail rule") {
  const std::vector<Complex> z{0.2, 0.1};
  const int need = poisson_terms_needed(1.0, 1.0, 1);
  CHECK_NOTHROW(poisson_kernel(1.0, 1.0, 1, z, need));
  CHECK_THROWS_AS(poisson_kernel(1.0, 1.0, 1, z, need / 2), std::runtime_error);
  const auto partial = poisson_partial_sums(1.0, 1.0, 1, z, need);
  CHECK(std::abs(partial.back() - poisson_kernel(1.0, 1.0, 1, z, need)) < 1e-15);
}

TEST_CASE("twisted convolution: heat semigroup and homomorphism") {
  const double lambda = 1.0;
  const Grid g(2, 8.0, 61);
  auto heat = [&](double a) {
    const KernelParams p(a, lambda, 1);
    return sample(g, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
  };
  const auto c = twisted_conv(heat(0.4), heat(0.6), lambda);
  const auto ref = heat(1.0);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(c.values[i] - ref.values[i]));
  CHECK(err / ref.sup_norm() < 1e-8);

  const auto f = gauss(g, 0.5, -0.2, lambda), h = gauss(g, -0.3, 0.4, lambda);
  const BasisSpec b(1, lambda, 30);
  const auto lhs = weyl_transform(twisted_conv(f, h, lambda), b).entries();
  const auto rhs = (weyl_transform(f, b) * weyl_transform(h, b)).entries();
  CHECK((lhs - rhs).norm() / rhs.norm() < 1e-4);
  CHECK_THROWS(twisted_conv(f, sample(Grid(2, 8.0, 60), [](std::span<const double>) { return Complex(0); }), lambda));
}

TEST_CASE("spectral projections sum back to the function") {
  const double lambda = 1.0;
  const Grid g(2, 9.0, 61);
  const auto f = gauss(g, 0.4, 0.1, lambda);
  SampledFunction total = f;
  for (auto& v : total.values) v = 0.0;
  for (int k = 0; k <= 30; ++k) {
    const auto pk = spectral_projection_weyl(f, k, BasisSpec(1, lambda, 40));
    for (std::size_t i = 0; i < g.size(); ++i) total.values[i] += pk.values[i];
  }
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(total.values[i] - f.values[i]));
  CHECK(err < 1e-6);
  const auto d = spectral_projection(f, 1, lambda);
  const auto w = spectral_projection_weyl(f, 1, BasisSpec(1, lambda, 40));
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dev = std::max(dev, std::abs(d.values[i] - w.values[i]));
  CHECK(dev < 1e-5 * d.sup_norm());
}

TEST_CASE("twisted laplacian eigenvalues") {
  for (double lambda : {1.0, -1.0}) {
    const Grid g(2, 8.0, 161);
    const auto phi = laguerre_fn_grid(1, 1, lambda, g);
    const auto L = twisted_laplacian(phi, lambda);
    const std::size_t mid = g.size() / 2 + 7;
    CHECK(L.values[mid].real() == Approx(3.0 * std::abs(lambda) * phi.values[mid].real()).epsilon(1e-4));
  }
}

TEST_CASE("heat kernel in time variable") {
  // ∫ p_a(x,u,t) dt = p_a^0 = (4πa)^{-1} e^{-ρ²/(4a)}; check the t-decay and tail flag
  const Grid lg(1, 60.0, 4001);
  const std::vector<double> x{0.2}, u{-0.1};
  const auto r0 = heat_kernel_time(1.0, x, u, 0.0, lg);
  CHECK(r0.tail_ok);
  CHECK(r0.value > heat_kernel_time(1.0, x, u, 1.0, lg).value);
  const auto coarse = heat_kernel_time(1.0, x, u, 0.0, Grid(1, 2.0, 41));
  CHECK_FALSE(coarse.tail_ok);
}
