#include "doctest.h"

#include <cmath>
#include <numbers>

#include "heis/quad.hpp"

using namespace heis;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("grid layout") {
  const Grid g(2, 3.0, 7);
  CHECK(g.size() == 49);
  CHECK(g.spacing(0) == Approx(1.0));
  const auto p = g.point(8);  // axis 0 slowest
  CHECK(p[0] == Approx(-2.0));
  CHECK(p[1] == Approx(-2.0));
  CHECK(g.on_boundary(0));
  CHECK_FALSE(g.on_boundary(8));
  CHECK(g.weight(0) == Approx(0.25));
  CHECK(g.weight(8) == Approx(1.0));
  CHECK_THROWS(Grid(2, 3.0, 1));
}

TEST_CASE("trapezoid integrates Gaussians to spectral accuracy") {
  const Grid g(2, 8.0, 81);
  const auto r = integrate(g, [](std::span<const double> x) {
    return Complex(std::exp(-0.5 * (x[0] * x[0] + 2 * x[1] * x[1])));
  });
  CHECK(r.value.real() == Approx(2 * kPi / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r.boundary_ok);
  const auto bad = integrate(Grid(1, 2.0, 41), [](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0] / 8)); });
  CHECK_FALSE(bad.boundary_ok);
  CHECK_FALSE(bad.warning.empty());
}

TEST_CASE("gauss-hermite rule is exact on polynomials") {
  for (int order : {8, 20, 64}) {
    const auto& r = gauss_hermite(order);
    CHECK(r.integrate([](double) { return Complex(1.0); }).real() == Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(r.integrate([](double x) { return Complex(std::pow(x, 4)); }).real() ==
          Approx(0.75 * std::sqrt(kPi)).epsilon(1e-12));
    CHECK(std::abs(r.integrate([](double x) { return Complex(std::pow(x, 5)); })) < 1e-12);
  }
  const auto s = gauss_hermite(30).scaled(3.0);
  CHECK(s.integrate([](double x) { return Complex(x * x); }).real() ==
        Approx(0.5 * std::sqrt(kPi) / std::pow(3.0, 1.5)).epsilon(1e-12));
  CHECK(gauss_hermite(40).integrate_plain([](double x) { return Complex(std::exp(-0.5 * x * x) * std::cos(x)); }).real() ==
        Approx(std::sqrt(2 * kPi) * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("gauss-legendre panels") {
  const auto& r = gauss_legendre(10);
  double s = 0.0;
  for (double w : r.weights) s += w;
  CHECK(s == Approx(2.0).epsilon(1e-14));
  CHECK(integrate_panels([](double x) { return std::sin(x); }, 0.0, kPi, 4) == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("haar unitaries are unitary and reproducible") {
  const auto a = haar_unitary(3, 42), b = haar_unitary(3, 42), c = haar_unitary(3, 43);
  CHECK((a.complex_matrix.adjoint() * a.complex_matrix - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-13);
  CHECK((a.complex_matrix - b.complex_matrix).norm() == 0.0);
  CHECK((a.complex_matrix - c.complex_matrix).norm() > 0.1);
  CHECK((a.real_embedding.transpose() * a.real_embedding - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-13);
}

TEST_CASE("unitaries preserve the symplectic form") {
  const auto s = haar_unitary(2, 7);
  const std::vector<double> p{0.3, -1.0, 0.5, 2.0}, q{1.1, 0.2, -0.7, 0.4};
  const auto sp = apply_real(s, p), sq = apply_real(s, q);
  CHECK(symplectic_form(sp, sq) == Approx(symplectic_form(p, q)).epsilon(1e-13));
  CHECK(symplectic_form(p, q) == Approx(p[2] * q[0] + p[3] * q[1] - p[0] * q[2] - p[1] * q[3]));
}

TEST_CASE("unitary rules") {
  const auto circle = unitary_rule(1, 16, 1);
  CHECK_FALSE(circle.monte_carlo);
  const auto avg = unitary_average(circle, [](const UnitarySample& s) { return std::norm(s.complex_matrix(0, 0) - 1.0); });
  CHECK(avg.mean == Approx(2.0).epsilon(1e-13));
  CHECK(avg.std_error == 0.0);
  const auto mc = unitary_rule(2, 200, 5);
  CHECK(mc.monte_carlo);
  // E|U_00|² = 1/n over Haar measure
  const auto m = unitary_average(mc, [](const UnitarySample& s) { return std::norm(s.complex_matrix(0, 0)); });
  CHECK(std::abs(m.mean - 0.5) < 4 * m.std_error + 1e-3);
}
