#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace heis {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;
using ComplexPoint = std::vector<Complex>;

int degree(const MultiIndex& alpha);

/// z² = Σ z_j², bilinear (no conjugation).
Complex bilinear_square(std::span<const Complex> z);

/// Laguerre polynomial L_k^alpha(t) by the three-term recurrence.
Complex laguerre(int k, double alpha, Complex t);
double laguerre(int k, double alpha, double t);

/// L_0^alpha(t) .. L_kmax^alpha(t).
std::vector<Complex> laguerre_sequence(int kmax, double alpha, Complex t);
std::vector<double> laguerre_sequence(int kmax, double alpha, double t);

/// Physicists' Hermite polynomial H_k (unnormalised; small k only).
Complex hermite_poly(int k, Complex z);

/// c_k = (2^k k! sqrt(pi))^{-1/2}.
double hermite_norm_const(int k);

/// Normalised Hermite functions h_j(z) = c_j H_j(z) e^{-z²/2}, j = 0..kmax.
/// Evaluated by the normalised recurrence, which carries the closed-form ratio
/// c_{j+1}/c_j and so avoids overflow of H_j.
void hermite_fns(int kmax, Complex z, Complex* out);
void hermite_fns(int kmax, double x, double* out);
std::vector<Complex> hermite_fns(int kmax, Complex z);

/// Φ_α^λ(z) = |λ|^{n/4} Π_j h_{α_j}(|λ|^{1/2} z_j).
Complex hermite_fn(const MultiIndex& alpha, std::span<const Complex> z, double lambda);

/// φ_{k,λ}^{n-1}(z,w) = L_k^{n-1}(|λ|/2 (z²+w²)) e^{-|λ|/4 (z²+w²)}; zw has length 2n.
Complex laguerre_fn_phi(int k, int n, double lambda, std::span<const Complex> zw);

/// Real-point form with ρ² = |x|²+|u|².
double laguerre_fn_phi_radial(int k, int n, double lambda, double rho2);

/// φ_{k,λ}^{n-1}(2iy, 2iv) = L_k^{n-1}(-2|λ|r²) e^{|λ|r²}, r = |(y,v)|.
double phi_imag_radial(int k, int n, double lambda, double r);

/// Below this degree the asymptotic is not applicable.
inline constexpr int kPerronMinDegree = 5;

/// Leading term of L_k^alpha(s) off the positive axis:
/// (1/2) π^{-1/2} e^{s/2} (-s)^{-alpha/2-1/4} k^{alpha/2-1/4} e^{2 sqrt(-s k)}.
/// Returns nullopt for k < kPerronMinDegree; throws std::domain_error if s lies
/// on [0, inf).
std::optional<Complex> perron_asymptotic(int k, double alpha, Complex s);

/// Kernel of the projection onto degree-k Hermite functions in n = z.size()
/// variables:
/// π^{-n/2} Σ_j (-1)^j L_j^{n/2-1}((z+w)²/2) L_{k-j}^{n/2-1}((z-w)²/2) e^{-(z²+w²)/2}.
Complex hermite_projection_kernel(int k, std::span<const Complex> z,
                                  std::span<const Complex> w);

/// binom(k+n-1, k) as a double.
double laguerre_dimension(int k, int n);

}  // namespace heis
