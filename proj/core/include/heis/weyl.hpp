#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heis/quad.hpp"
#include "heis/special_fn.hpp"

namespace heis {

/// Truncated Hermite basis {Φ_α^λ : |α| ≤ K}, ordered by degree then
/// lexicographically.
class BasisSpec {
 public:
  BasisSpec(int n, double lambda, int K);

  int n() const { return n_; }
  double lambda() const { return lambda_; }
  int K() const { return K_; }
  std::size_t dim() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  std::size_t index_of(const MultiIndex& alpha) const;
  /// Half-open range of positions holding |α| = k.
  std::pair<std::size_t, std::size_t> degree_block(int k) const;
  /// Number of basis functions with |α| ≤ k.
  std::size_t dim_up_to(int k) const;

  bool operator==(const BasisSpec& o) const {
    return n_ == o.n_ && lambda_ == o.lambda_ && K_ == o.K_;
  }

 private:
  int n_;
  double lambda_;
  int K_;
  std::vector<MultiIndex> indices_;
};

/// Dense matrix with entry (α,β) = (T Φ_β^λ, Φ_α^λ).
class OperatorMatrix {
 public:
  OperatorMatrix(BasisSpec basis, Eigen::MatrixXcd entries);

  const BasisSpec& basis() const { return basis_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(std::size_t a, std::size_t b) const { return entries_(a, b); }

  OperatorMatrix adjoint() const;
  OperatorMatrix operator*(const OperatorMatrix& rhs) const;
  OperatorMatrix operator+(const OperatorMatrix& rhs) const;
  OperatorMatrix operator*(Complex c) const;

 private:
  BasisSpec basis_;
  Eigen::MatrixXcd entries_;
};

/// Imaginary parts of (z,w) beyond this radius (times |λ|^{-1/2}) are refused.
inline constexpr double kImagRadius = 6.0;

/// Quadrature order for matrix elements of a degree-K basis: 2K+16, raised
/// when the residual phase frequency omega (scaled units) needs more nodes.
int displacement_order(int K, double omega = 0.0);

/// One-dimensional block at λ = 1: entry (a,b) = ∫ e^{i(zξ + zw/2)} h_b(ξ+w) h_a(ξ) dξ.
Eigen::MatrixXcd displacement_1d(Complex z, Complex w, int K);

OperatorMatrix pi_real(std::span<const double> x, std::span<const double> u,
                       const BasisSpec& basis);
OperatorMatrix pi_complex(std::span<const Complex> z, std::span<const Complex> w,
                          const BasisSpec& basis);

/// ∫ g(x,u) π_λ(x,u) dx du over the sample grid (n = 1).
OperatorMatrix weyl_transform(const SampledFunction& g, const BasisSpec& basis);

/// g(x,u) = (2π)^{-n}|λ|^n tr(π_λ(x,u)^* T) on the grid (n = 1).
SampledFunction weyl_inverse(const OperatorMatrix& T, const Grid& grid);

/// Φ_{αβ}^λ(z,w) = (2π)^{-n/2} (π_λ(z,w)Φ_α^λ, Φ_β^λ); zw = (z, w).
Complex special_hermite(const MultiIndex& alpha, const MultiIndex& beta,
                        std::span<const Complex> zw, const BasisSpec& basis);

enum class Schatten { One, Two, Infinity };

double schatten_norm(const Eigen::MatrixXcd& T, Schatten p);
double schatten_norm(const OperatorMatrix& T, Schatten p);
Complex trace(const OperatorMatrix& T);

/// Relative floor applied to singular values before summation.
inline constexpr double kSingularFloor = 1e-14;

/// e^{-aH(λ)}: diagonal with entries e^{-a(2|α|+n)|λ|}.
OperatorMatrix hermite_semigroup(double a, const BasisSpec& basis);

/// P_k(λ): orthogonal projection onto span{Φ_α : |α| = k}.
OperatorMatrix hermite_projector(int k, const BasisSpec& basis);

}  // namespace heis
