#include "doctest.h"

#include <cmath>
#include <numbers>

#include "heis/weyl.hpp"

using namespace heis;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("basis ordering") {
  const BasisSpec b(2, 1.0, 3);
  CHECK(b.dim() == 10);
  CHECK(b.degree_block(2) == std::pair<std::size_t, std::size_t>{3, 6});
  CHECK(b.dim_up_to(1) == 3);
  CHECK(b.index_of({1, 1}) == 4);
  CHECK_THROWS(BasisSpec(1, 0.0, 4));
}

TEST_CASE("displacement block: vacuum expectation") {
  // (π(x,0)h_0, h_0) = ∫ e^{ixξ} h_0(ξ)² dξ = e^{-x²/4}
  for (double x : {0.0, 0.7, 2.5}) {
    const auto D = displacement_1d(Complex(x), Complex(0.0), 4);
    CHECK(D(0, 0).real() == Approx(std::exp(-x * x / 4)).epsilon(1e-13));
    CHECK(std::abs(D(0, 0).imag()) < 1e-14);
  }
}

TEST_CASE("pi_real is unitary on the low block and composes with the twist") {
  const BasisSpec b(1, 1.3, 40);
  const std::vector<double> x1{0.4}, u1{-0.3}, x2{-0.2}, u2{0.6};
  const auto P = pi_real(x1, u1, b);
  const std::size_t m = b.dim_up_to(20);
  const Eigen::MatrixXcd U = P.entries();
  CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(b.dim(), b.dim())).topLeftCorner(m, m).norm() < 1e-10);
  // π(x1,u1)π(x2,u2) = e^{(iλ/2)(u1·x2 − x1·u2)} π(x1+x2, u1+u2)
  const std::vector<double> xs{0.2}, us{0.3};
  const Eigen::MatrixXcd lhs = (P * pi_real(x2, u2, b)).entries().topLeftCorner(m, m);
  const Complex phase = std::polar(1.0, 0.5 * 1.3 * (u1[0] * x2[0] - x1[0] * u2[0]));
  const Eigen::MatrixXcd rhs = (phase * pi_real(xs, us, b).entries()).topLeftCorner(m, m);
  CHECK((lhs - rhs).norm() < 1e-10);
  CHECK((pi_real(x1, u1, b).adjoint().entries() - pi_real(std::vector<double>{-0.4}, std::vector<double>{0.3}, b).entries())
            .topLeftCorner(m, m)
            .norm() < 1e-10);
}

TEST_CASE("pi_complex reduces to pi_real and guards the imaginary range") {
  const BasisSpec b(1, -0.8, 16);
  const std::vector<Complex> z{0.5}, w{-0.25};
  const std::vector<double> x{0.5}, u{-0.25};
  CHECK((pi_complex(z, w, b).entries() - pi_real(x, u, b).entries()).norm() < 1e-12);
  const std::vector<Complex> far{Complex(0, 7.0)};
  CHECK_THROWS(pi_complex(far, w, b));
}

TEST_CASE("weyl transform: plancherel, trace and inversion") {
  const double lambda = 1.0;
  const Grid g(2, 8.0, 97);
  const auto f = sample(g, [](std::span<const double> p) {
    return std::exp(-0.5 * ((p[0] - 0.3) * (p[0] - 0.3) + p[1] * p[1])) * Complex(1.0, 0.2 * p[0]);
  }, 1, lambda);
  const BasisSpec b(1, lambda, 40);
  const auto T = weyl_transform(f, b);
  CHECK(T.entries().squaredNorm() * lambda / (2 * kPi) == Approx(f.l2_norm_sq()).epsilon(1e-6));
  const double gauss0 = std::exp(-0.5 * 0.09);
  CHECK(trace(T).real() == Approx(2 * kPi / lambda * gauss0).epsilon(1e-6));
  const auto back = weyl_inverse(T, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(back.values[i] - f.values[i]));
  CHECK(err < 1e-4);
}

TEST_CASE("schatten norms of a diagonal operator") {
  const BasisSpec b(1, 1.0, 5);
  const auto S = hermite_semigroup(0.5, b);
  double one = 0.0, two = 0.0;
  for (int k = 0; k <= 5; ++k) {
    one += std::exp(-0.5 * (2 * k + 1));
    two += std::exp(-(2 * k + 1));
  }
  CHECK(schatten_norm(S, Schatten::One) == Approx(one).epsilon(1e-13));
  CHECK(schatten_norm(S, Schatten::Two) == Approx(std::sqrt(two)).epsilon(1e-13));
  CHECK(schatten_norm(S, Schatten::Infinity) == Approx(std::exp(-0.5)).epsilon(1e-13));
  const auto P = hermite_projector(2, BasisSpec(2, 1.0, 4));
  CHECK(trace(P).real() == Approx(3.0));
  CHECK(((P * P).entries() - P.entries()).norm() < 1e-15);
}

TEST_CASE("special hermite functions are orthogonal with norm |lambda|^{-n}") {
  const double lambda = 1.0;
  const BasisSpec b(1, lambda, 8);
  const Grid g(2, 9.0, 73);
  std::vector<std::vector<Complex>> vals(3, std::vector<Complex>(g.size()));
  const std::vector<std::pair<MultiIndex, MultiIndex>> idx{{{0}, {0}}, {{1}, {2}}, {{2}, {1}}};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    const std::vector<Complex> zw{p[0], p[1]};
    for (int j = 0; j < 3; ++j) vals[j][i] = special_hermite(idx[j].first, idx[j].second, zw, b);
  }
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) s += vals[a][i] * std::conj(vals[c][i]) * g.weight(i);
      CHECK(std::abs(s - (a == c ? 1.0 / lambda : 0.0)) < 1e-8);
    }
}
