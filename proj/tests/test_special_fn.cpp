#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "heis/special_fn.hpp"

using namespace heis;
using doctest::Approx;

namespace {

// Explicit sum L_k^a(t) = Σ_j (-1)^j binom(k+a, k-j) t^j / j!.
Complex laguerre_sum(int k, double a, Complex t) {
  Complex s = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double binom = std::tgamma(k + a + 1) / (std::tgamma(k - j + 1) * std::tgamma(a + j + 1));
    s += (j % 2 ? -1.0 : 1.0) * binom * std::pow(t, j) / std::tgamma(j + 1.0);
  }
  return s;
}

}  // namespace

TEST_CASE("laguerre matches high-precision values") {
  // reference values computed in 30-digit arithmetic
  CHECK(laguerre(5, 0.5, 1.3) == Approx(-0.731480666666666614).epsilon(1e-14));
  CHECK(laguerre(10, 2.0, 3.7) == Approx(-4.21980521780755544).epsilon(1e-13));
  CHECK(laguerre(40, 0.0, -2.5) == Approx(14784908.5657480330).epsilon(1e-13));
  const Complex z = laguerre(7, 1.0, Complex(2.0, 1.0));
  CHECK(z.real() == Approx(3.95515873015873016).epsilon(1e-13));
  CHECK(z.imag() == Approx(2.59464285714285714).epsilon(1e-13));
}

TEST_CASE("laguerre recurrence agrees with the explicit sum") {
  for (int k = 0; k <= 12; ++k)
    for (double a : {0.0, 0.5, 1.0, 3.0}) {
      const Complex t(0.8, -0.4);
      CHECK(std::abs(laguerre(k, a, t) - laguerre_sum(k, a, t)) < 1e-10 * (1 + std::abs(laguerre_sum(k, a, t))));
    }
  const auto seq = laguerre_sequence(9, 1.5, 2.2);
  for (int k = 0; k <= 9; ++k) CHECK(seq[k] == Approx(laguerre(k, 1.5, 2.2)).epsilon(1e-14));
}

TEST_CASE("hermite functions match high-precision values") {
  std::vector<double> h(31);
  hermite_fns(30, 0.7, h.data());
  CHECK(h[0] == Approx(0.587909372442104641).epsilon(1e-14));
  CHECK(h[1] == Approx(0.582000585567715627).epsilon(1e-14));
  CHECK(h[3] == Approx(-0.479953503096114034).epsilon(1e-14));
  CHECK(h[30] == Approx(-0.194539563567087903).epsilon(1e-12));
  hermite_fns(30, 2.0, h.data());
  CHECK(h[30] == Approx(0.280703642465536343).epsilon(1e-12));
  const auto hc = hermite_fns(5, Complex(0.5, 0.3));
  CHECK(hc[5].real() == Approx(0.668683749450964565).epsilon(1e-13));
  CHECK(hc[5].imag() == Approx(-0.0417891703102794542).epsilon(1e-12));
}

TEST_CASE("hermite functions are orthonormal") {
  const int K = 20, M = 4001;
  const double R = 12.0, h = 2 * R / (M - 1);
  std::vector<std::vector<double>> vals(M, std::vector<double>(K + 1));
  for (int i = 0; i < M; ++i) hermite_fns(K, -R + i * h, vals[i].data());
  for (int a = 0; a <= K; a += 5)
    for (int b = 0; b <= K; b += 4) {
      double s = 0.0;
      for (int i = 0; i < M; ++i) s += vals[i][a] * vals[i][b] * h;
      CHECK(s == Approx(a == b ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("hermite_poly and hermite_fn agree with the normalised recurrence") {
  const Complex z(0.3, -0.2);
  const auto h = hermite_fns(6, z);
  for (int k = 0; k <= 6; ++k)
    CHECK(std::abs(hermite_norm_const(k) * hermite_poly(k, z) * std::exp(-z * z / 2.0) - h[k]) < 1e-13);
  const MultiIndex alpha{2, 1};
  const std::vector<Complex> w{Complex(0.4, 0.1), Complex(-0.3, 0.0)};
  const double lambda = 2.0, s = std::sqrt(lambda);
  const Complex expect = std::sqrt(lambda) * hermite_fns(2, s * w[0])[2] * hermite_fns(1, s * w[1])[1];
  CHECK(std::abs(hermite_fn(alpha, w, lambda) - expect) < 1e-13);
}

TEST_CASE("laguerre function forms are consistent") {
  const double lambda = 1.5, rho2 = 2.3;
  const std::vector<Complex> zw{std::sqrt(rho2), 0.0};
  CHECK(laguerre_fn_phi(3, 1, lambda, zw).real() == Approx(laguerre_fn_phi_radial(3, 1, lambda, rho2)));
  // φ_k(2iy,2iv) with r = |(y,v)|
  const double y = 0.4, v = 0.3, r = std::hypot(y, v);
  const std::vector<Complex> im{Complex(0, 2 * y), Complex(0, 2 * v)};
  CHECK(laguerre_fn_phi(4, 1, lambda, im).real() == Approx(phi_imag_radial(4, 1, lambda, r)).epsilon(1e-12));
  CHECK(bilinear_square(im).real() == Approx(-4 * r * r));
}

TEST_CASE("perron asymptotic approaches the Laguerre polynomial") {
  CHECK_FALSE(perron_asymptotic(3, 0.0, -1.0).has_value());
  CHECK_THROWS_AS(perron_asymptotic(20, 0.0, 2.0), std::domain_error);
  double prev = 1e9;
  for (int k : {50, 200, 800}) {
    const double ratio = std::abs(*perron_asymptotic(k, 0.0, -2.0) / laguerre(k, 0.0, Complex(-2.0)));
    CHECK(std::abs(ratio - 1.0) < prev);
    prev = std::abs(ratio - 1.0);
  }
  CHECK(prev < 0.05);  // leading term only: error of order k^{-1/2}
}

TEST_CASE("hermite projection kernels reproduce and sum to the identity kernel") {
  // Σ_k Φ_k(z,w) = Σ_α h_α(z) h_α(w): compare degree by degree in n = 1
  const std::vector<Complex> z{Complex(0.4, 0.2)}, w{Complex(-0.7, 0.0)};
  const auto hz = hermite_fns(8, z[0]), hw = hermite_fns(8, w[0]);
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(hermite_projection_kernel(k, z, w) - hz[k] * hw[k]) < 1e-12);
  // n = 2: degree-k kernel is Σ_{i+j=k} h_i h_j ⊗ h_i h_j
  const std::vector<Complex> z2{Complex(0.3, 0.1), Complex(-0.2, 0.3)}, w2{Complex(0.5, 0.0), Complex(0.1, -0.2)};
  const auto a0 = hermite_fns(5, z2[0]), a1 = hermite_fns(5, z2[1]), b0 = hermite_fns(5, w2[0]), b1 = hermite_fns(5, w2[1]);
  for (int k = 0; k <= 5; ++k) {
    Complex s = 0.0;
    for (int i = 0; i <= k; ++i) s += a0[i] * a1[k - i] * b0[i] * b1[k - i];
    CHECK(std::abs(hermite_projection_kernel(k, z2, w2) - s) < 1e-12);
  }
}

TEST_CASE("laguerre_dimension and degree") {
  CHECK(laguerre_dimension(0, 3) == 1.0);
  CHECK(laguerre_dimension(4, 1) == 1.0);
  CHECK(laguerre_dimension(4, 2) == 5.0);
  CHECK(laguerre_dimension(3, 3) == 10.0);
  CHECK(degree({2, 0, 5}) == 7);
}
