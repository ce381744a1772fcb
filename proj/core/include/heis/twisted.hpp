#pragma once

#include <span>
#include <string>
#include <vector>

#include "heis/quad.hpp"
#include "heis/weyl.hpp"

namespace heis {

struct KernelParams {
  double a = 1.0;  // diffusion time (or Poisson parameter)
  double lambda = 1.0;
  int n = 1;

  KernelParams() = default;
  KernelParams(double a_, double lambda_, int n_);
};

/// (f ∗_λ g)(x,u) = ∫ f(x−y, u−v) g(y,v) e^{(iλ/2)(u·y − v·x)} dy dv, n = 1.
/// Both inputs must share a grid with an odd number of points per axis so
/// that differences of grid points are grid points. Direct O(N⁴) sum.
SampledFunction twisted_conv(const SampledFunction& f, const SampledFunction& g, double lambda);

/// φ_{k,λ}^{n-1} sampled on a grid over ℝ^{2n}.
SampledFunction laguerre_fn_grid(int k, int n, double lambda, const Grid& grid);

/// (2π)^{-n}|λ|^n (f ∗_λ φ_{k,λ}) by direct twisted convolution.
SampledFunction spectral_projection(const SampledFunction& f, int k, double lambda);

/// Same component through the Weyl transform: weyl_inverse(π_λ(f) P_k(λ)).
SampledFunction spectral_projection_weyl(const SampledFunction& f, int k, const BasisSpec& basis);

/// Fourth-order finite-difference application of
/// L_λ = −Δ + (λ²/4)(x²+u²) + iλ(u∂_x − x∂_u) on a grid over ℝ²; the two
/// outermost rows and columns are left at zero.
SampledFunction twisted_laplacian(const SampledFunction& f, double lambda);

/// |λ|/sinh(a|λ|) and |λ|coth(a|λ|), with series forms for |aλ| < 1e-4
/// (both tend to 1/a as λ → 0).
double sinh_factor(double a, double lambda);
double coth_factor(double a, double lambda);

/// p_a^λ(z,w) = (4π)^{-n}(λ/sinh aλ)^n e^{-(λ/4)coth(aλ)(z²+w²)}, bilinear squares.
Complex heat_kernel(const KernelParams& p, std::span<const Complex> zw);
double heat_kernel(const KernelParams& p, std::span<const double> xu);
/// Radial real form with ρ² = |x|²+|u|².
double heat_kernel_radial(const KernelParams& p, double rho2);

/// (2π)^{-n}|λ|^n Σ_{k<terms} e^{-a(2k+n)|λ|} φ_{k,λ}(z,w).
Complex heat_kernel_series(const KernelParams& p, std::span<const Complex> zw, int terms);

/// Partial sums S_0..S_{terms-1} of (2π)^{-n}|λ|^n Σ e^{-ρ√((2k+n)|λ|)} φ_{k,λ}(z,w);
/// no tail requirement (used to exhibit the tube-domain behaviour).
std::vector<Complex> poisson_partial_sums(double rho, double lambda, int n,
                                          std::span<const Complex> zw, int terms);

/// Poisson kernel partial sum; throws std::runtime_error unless the last
/// term's factor e^{-ρ√((2k+n)|λ|)} is below 1e-14.
Complex poisson_kernel(double rho, double lambda, int n, std::span<const Complex> zw, int terms);

/// Smallest term count meeting the Poisson tail requirement.
int poisson_terms_needed(double rho, double lambda, int n);

struct HeatTimeResult {
  double value = 0.0;
  double tail = 0.0;  // |integrand| at the λ-grid ends relative to its peak
  bool tail_ok = true;
  std::string warning;
};

/// p_a(x,u,t) = (2π)^{-1} ∫ e^{-iλt} p_a^λ(x,u) dλ by trapezoid on lambda_grid.
HeatTimeResult heat_kernel_time(double a, std::span<const double> x, std::span<const double> u,
                                double t, const Grid& lambda_grid);

}  // namespace heis
