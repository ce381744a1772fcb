#include "doctest.h"

#include <cmath>
#include <sstream>

#include "heis/io.hpp"

using namespace heis;

namespace {

OperatorMatrix sample_operator() {
  const BasisSpec b(2, -0.7, 3);
  Eigen::MatrixXcd m(b.dim(), b.dim());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(std::sin(1.0 + i * 7 + j), 1.0 / (3.0 + i + 0.5 * j));
  return OperatorMatrix(b, m);
}

}  // namespace

TEST_CASE("operator text roundtrip is exact") {
  const auto T = sample_operator();
  std::stringstream ss;
  write_operator_text(ss, T);
  CHECK(ss.str().rfind("HEISOP 1", 0) == 0);
  const auto R = read_operator_text(ss);
  CHECK(R.basis() == T.basis());
  CHECK((R.entries() - T.entries()).norm() == 0.0);
}

TEST_CASE("operator binary roundtrip is exact") {
  const auto T = sample_operator();
  std::stringstream ss;
  write_operator_binary(ss, T);
  CHECK(ss.str().substr(0, 8) == "HEISOPB1");
  CHECK(ss.str().size() == 8 + 4 + 8 + 4 + 8 + T.entries().size() * 16);
  const auto R = read_operator_binary(ss);
  CHECK(R.basis() == T.basis());
  CHECK((R.entries() - T.entries()).norm() == 0.0);
}

TEST_CASE("malformed operator files are rejected") {
  std::stringstream bad("HEISOP 2\nn 1\n");
  CHECK_THROWS(read_operator_text(bad));
  std::stringstream truncated;
  write_operator_text(truncated, sample_operator());
  std::stringstream cut(truncated.str().substr(0, truncated.str().size() / 2));
  CHECK_THROWS(read_operator_text(cut));
  std::stringstream badbin("HEISOPBX........");
  CHECK_THROWS(read_operator_binary(badbin));
}

TEST_CASE("sampled function roundtrip") {
  const Grid g(2, 3.0, 5);
  const auto f = sample(g, [](std::span<const double> x) { return Complex(x[0] * 0.1, std::exp(x[1])); }, 1, 0.5);
  std::stringstream ss;
  write_sampled(ss, f);
  const auto r = read_sampled(ss);
  CHECK(r.grid == f.grid);
  CHECK(r.lambda.has_value());
  CHECK(*r.lambda == 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.values[i] == f.values[i]);
  const auto h = sample(Grid(1, 2.0, 3), [](std::span<const double>) { return Complex(1.0); });
  std::stringstream s2;
  write_sampled(s2, h);
  CHECK_FALSE(read_sampled(s2).lambda.has_value());
}

TEST_CASE("coefficients roundtrip in linear and log scale") {
  const SpectralCoefficients lin(SpectralCoefficients::Meaning::Norms, {1.5, 0.25, 0.0});
  std::stringstream a;
  write_coefficients(a, lin);
  CHECK(a.str().find("# scale linear") != std::string::npos);
  const auto ra = read_coefficients(a);
  CHECK(ra.meaning == SpectralCoefficients::Meaning::Norms);
  for (std::size_t k = 0; k < 3; ++k) CHECK(ra.value(k) == lin.value(k));

  const auto big = SpectralCoefficients::from_log(SpectralCoefficients::Meaning::Weights, {1.0, 900.0});
  std::stringstream b;
  write_coefficients(b, big);
  CHECK(b.str().find("# scale log") != std::string::npos);
  const auto rb = read_coefficients(b);
  CHECK(rb.meaning == SpectralCoefficients::Meaning::Weights);
  CHECK(rb.log_values[1] == 900.0);
}

TEST_CASE("profile csv") {
  FunctionalProfile p;
  p.radii = {1.0, 2.0};
  p.partials = {0.5, 0.75};
  p.verdict = Verdict::Inconclusive;
  std::stringstream ss;
  write_profile_csv(ss, p);
  std::string header, row1, row2;
  std::getline(ss, header);
  std::getline(ss, row1);
  std::getline(ss, row2);
  CHECK(header == "R,partial,increment,verdict");
  CHECK(row1 == "1,0.5,0.5,inconclusive");
  CHECK(row2 == "2,0.75,0.25,inconclusive");
}

TEST_CASE("file helpers report missing files") {
  CHECK_THROWS_AS(load_text("/nonexistent/dir/file.txt"), std::runtime_error);
}
