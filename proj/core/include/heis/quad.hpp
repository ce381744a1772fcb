#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heis/special_fn.hpp"

namespace heis {

/// Uniform tensor grid, symmetric about the origin; axis 0 varies slowest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, double extent, int points);
  Grid(std::vector<double> extents, std::vector<int> points);

  int dim() const { return static_cast<int>(extent_.size()); }
  double extent(int axis) const { return extent_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return 2.0 * extent_[axis] / (points_[axis] - 1); }
  double coord(int axis, int i) const { return -extent_[axis] + i * spacing(axis); }
  std::vector<double> axis_coords(int axis) const;
  std::size_t size() const;
  void point(std::size_t flat, double* out) const;
  std::vector<double> point(std::size_t flat) const;
  bool on_boundary(std::size_t flat) const;
  /// Trapezoid weight of a grid point, cell volume included.
  double weight(std::size_t flat) const;

  bool operator==(const Grid& other) const = default;

 private:
  std::vector<double> extent_;
  std::vector<int> points_;
};

/// Complex samples on a grid; optional metadata used by the serialisers.
struct SampledFunction {
  Grid grid;
  std::vector<Complex> values;
  int n = 1;
  std::optional<double> lambda;

  SampledFunction() = default;
  SampledFunction(Grid g, std::vector<Complex> v, int n_ = 1, std::optional<double> l = {});

  double sup_norm() const;
  double l2_norm_sq() const;
};

SampledFunction sample(const Grid& grid, const std::function<Complex(std::span<const double>)>& f,
                       int n = 1, std::optional<double> lambda = {});

/// Quadrature outcome with the boundary-decay diagnostic.
struct Integral {
  Complex value = 0.0;
  bool boundary_ok = true;
  double boundary_ratio = 0.0;  // max |f| on the boundary over max |f|
  std::string warning;
};

inline constexpr double kBoundaryDecay = 1e-12;

Integral integrate(const SampledFunction& f, double decay_tol = kBoundaryDecay);
Integral integrate(const Grid& grid, const std::function<Complex(std::span<const double>)>& f,
                   double decay_tol = kBoundaryDecay);

/// Gauss–Hermite rule for ∫ e^{-scale ξ²} f(ξ) dξ.
struct GaussHermiteRule {
  int order = 0;
  double scale = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights multiplied by e^{scale ξ²}: for ∫ g(ξ) dξ with g Gaussian-like.
  std::vector<double> plain_weights;

  GaussHermiteRule scaled(double s) const;
  Complex integrate(const std::function<Complex(double)>& f) const;
  Complex integrate_plain(const std::function<Complex(double)>& g) const;
};

/// Golub–Welsch nodes polished by Newton steps; cached per order.
const GaussHermiteRule& gauss_hermite(int order);

struct GaussLegendreRule {
  int order = 0;
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

/// Composite Gauss–Legendre on [a,b] with equal panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int order = 20);

struct UnitarySample {
  Eigen::MatrixXcd complex_matrix;
  Eigen::MatrixXd real_embedding;  // [[A, -B], [B, A]]
};

UnitarySample haar_unitary(int n, std::uint64_t seed);
UnitarySample haar_unitary(int n, std::mt19937_64& rng);
UnitarySample unitary_from(const Eigen::MatrixXcd& sigma);

/// [(x,u),(y,v)] = u·y − v·x.
double symplectic_form(std::span<const double> p, std::span<const double> q);

/// σ acting on (x,u) ∈ ℝ^{2n} through the real embedding.
std::vector<double> apply_real(const UnitarySample& s, std::span<const double> xu);

/// Quadrature over U(n): uniform M-point circle rule for n = 1, Haar Monte
/// Carlo otherwise.
struct UnitaryRule {
  std::vector<UnitarySample> samples;
  std::vector<double> weights;
  bool monte_carlo = false;
};

UnitaryRule unitary_rule(int n, int count, std::uint64_t seed);

/// Mean and standard error of weighted samples (standard error is 0 for the
/// deterministic rule).
struct Average {
  double mean = 0.0;
  double std_error = 0.0;
};

Average unitary_average(const UnitaryRule& rule, const std::function<double(const UnitarySample&)>& f);

}  // namespace heis
