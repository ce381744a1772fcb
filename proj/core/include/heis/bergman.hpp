#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heis/quad.hpp"
#include "heis/twisted.hpp"
#include "heis/weyl.hpp"

namespace heis {

/// Holomorphic function on ℂ^{2n} given pointwise.
using EntireFn = std::function<Complex(std::span<const Complex>)>;

/// Sequence over k of norms ‖g ∗_λ φ_k‖₂² or weights C_λ(k). Values are
/// stored as logarithms because weight sequences overflow double quickly.
struct SpectralCoefficients {
  enum class Meaning { Norms, Weights };

  Meaning meaning = Meaning::Norms;
  std::vector<double> log_values;  // -inf encodes an exact zero

  SpectralCoefficients() = default;
  SpectralCoefficients(Meaning m, std::vector<double> values);  // from linear values
  static SpectralCoefficients from_log(Meaning m, std::vector<double> logs);

  std::size_t size() const { return log_values.size(); }
  double value(std::size_t k) const;
  std::vector<double> values() const;
};

/// k!(n-1)!/(k+n-1)!, the inverse of the degree-k eigenspace multiplicity.
double multiplicity_factor(int k, int n);

/// ‖g∗φ_k‖² = (2π)^n|λ|^{-n} ‖π_λ(g)P_k‖²_HS from a Weyl transform.
SpectralCoefficients spectral_norms(const OperatorMatrix& ghat, int kmax);

/// The same norms by direct twisted convolution and grid quadrature (n = 1).
SpectralCoefficients spectral_norms_direct(const SampledFunction& g, double lambda, int kmax);

/// (g ∗_λ p_a^λ)(z,w) by quadrature over the grid of g with the complexified
/// kernel and phase; n = 1 grids.
Complex segal_bargmann(const SampledFunction& g, double a, double lambda,
                       std::span<const Complex> zw);

struct GutzmerOptions {
  Grid grid;               // real (x,u) grid over ℝ^{2n}
  UnitaryRule rule;        // integration over U(n)
  double sigma_tol = 1e-6; // relative spread of inner integrals flagged in notes
};

GutzmerOptions default_gutzmer_options(int n, double lambda, std::uint64_t seed = 1);

struct GutzmerValue {
  double value = 0.0;
  double std_error = 0.0;
  double sigma_spread = 0.0;  // max relative deviation of the inner integrals
  bool boundary_ok = true;
  std::string notes;
};

/// ∫_{U(n)} ∫ |G((x,u) + iσ(y,v))|² e^{λ(u·y − v·x)} dx du dσ.
GutzmerValue gutzmer_lhs(const EntireFn& G, double lambda, int n, std::span<const double> yv,
                         const GutzmerOptions& opts);

/// c Σ_k multiplicity_factor(k,n) φ_k(2iy,2iv) ‖g∗φ_k‖²; throws std::runtime_error if
/// the last term is not below 1e-12 of the sum.
double gutzmer_rhs(const SpectralCoefficients& norms, double lambda, int n,
                   std::span<const double> yv, double c);

/// Analytic value of the Gutzmer constant in this normalisation: ((2π)^{-n}|λ|^n)².
double gutzmer_constant(int n, double lambda);

/// Closed-form ‖p_t^λ ∗ φ_k‖² = e^{-2t(2k+n)|λ|} (2π)^n |λ|^{-n} binom(k+n-1,k).
SpectralCoefficients heat_kernel_norms(double t, double lambda, int n, int kmax);

struct OrbitalValue {
  double lhs = 0.0;
  double rhs = 0.0;
  double std_error = 0.0;
};

/// LHS = ∫_{U(n)} ‖π_λ(σ(z,w))^* f̂‖²_HS dσ and
/// RHS = c e^{-λ(u·y − x·v)} Σ_k multiplicity_factor φ_k(2iy,2iv) ‖f^λ∗φ_k‖².
OrbitalValue orbital_hs_identity(const OperatorMatrix& fhat, std::span<const Complex> zw,
                                 const UnitaryRule& rule, const SpectralCoefficients& norms,
                                 double c);

/// Analytic orbital constant (2π)^{-n}|λ|^n.
double orbital_constant(int n, double lambda);

/// Radial weight w_λ(y,v) = profile(|(y,v)|).
struct RadialWeight {
  int n = 1;
  double lambda = 1.0;
  std::string label;
  std::function<double(double)> radial;
  /// w(r) e^{|λ| r²}, evaluated without overflow where possible.
  std::function<double(double)> radial_growth;

  double value(std::span<const double> yv) const;
};

/// w = p_{2t}^λ(2y,2v).
RadialWeight heat_weight(double t, double lambda, int n);

/// w = ∫₀^∞ tⁿ e^{-t^s/s} p_t^λ(2y,2v) dt.
RadialWeight superposition_weight_fn(double s, double lambda, int n);
double superposition_weight(double s, double lambda, std::span<const double> yv);

struct PolarOptions {
  double r_max = 200.0;
  double tail_tol = 1e-14;
  bool log_radius = false;  // integrate in ln r (long tails)
  double log_r_min = -12.0;
};

/// C_λ(k) = multiplicity_factor ∫ w φ_k(2iy,2iv) dy dv by polar Gauss–Legendre
/// quadrature; throws std::runtime_error if the tail is not below tolerance
/// before r_max.
SpectralCoefficients weight_to_coefficients(const RadialWeight& w, int kmax,
                                            const PolarOptions& opts = {});

/// Superposition coefficients through Fubini:
/// C_λ(k) = 4^{-n} ∫ tⁿ e^{-t^s/s} e^{t(2k+n)|λ|} dt (log domain).
SpectralCoefficients superposition_coefficients(double s, double lambda, int n, int kmax);

/// q_λ(z,w) = (2π)^{-n}|λ|^n Σ_k C_λ(k)^{-1/2} φ_k(z,w). Throws
/// std::runtime_error when the majorant tail cannot be certified below tol.
Complex kernel_from_weight(const SpectralCoefficients& weights, double lambda, int n,
                           std::span<const Complex> zw, int kmax, double tol = 1e-10);

/// Heat case via the semigroup identity:
/// K(P,Q) = e^{-(iλ/2)(w·conj(z′) − z·conj(w′))} p_{2a}^λ(z − conj(z′), w − conj(w′)).
Complex reproducing_kernel_heat(double a, double lambda, int n, std::span<const Complex> P,
                                std::span<const Complex> Q);

/// General case: (q ∗_λ q) at the complexified difference by quadrature over grid.
Complex reproducing_kernel(const EntireFn& q, double lambda, const Grid& grid,
                           std::span<const Complex> P, std::span<const Complex> Q);

/// Samples of F = g ∗_λ p_a^λ on the tube grid (x, y_im, u, v_im) (n = 1).
struct TubeSamples {
  std::vector<double> xs, us;        // real axes
  std::vector<double> ys, vs;        // imaginary axes
  double hx = 0, hu = 0, hy = 0, hv = 0;
  std::vector<Complex> values;       // index ((iy * nv + iv) * nx + ix) * nu + iu

  Complex at(std::size_t ix, std::size_t iy, std::size_t iu, std::size_t iv) const {
    return values[((iy * vs.size() + iv) * xs.size() + ix) * us.size() + iu];
  }
};

struct TubeOptions {
  double real_extent = 10.0;
  int real_points = 41;
  double imag_extent = 5.0;
  int imag_points = 21;
  std::size_t budget = 49ull * 49 * 49 * 49;
  double rank_tol = 1e-14;
};

TubeSamples segal_bargmann_tube(const SampledFunction& g, double a, double lambda,
                                const TubeOptions& opts);

enum class IsometryMode { Series, Direct4D };

struct IsometryOptions {
  int K = 48;
  int kmax = 40;
  TubeOptions tube;
};

struct IsometryValue {
  double lhs = 0.0;
  double rhs = 0.0;       // c_λ ‖g‖²
  double norm_sq = 0.0;   // ‖g‖²
};

/// LHS = ∫ |g∗p_a(z,w)|² e^{λ(u·y−v·x)} p_{2a}^λ(2y,2v) dz dw (n = 1).
IsometryValue bergman_isometry(const SampledFunction& g, double a, double lambda, IsometryMode mode,
                               double c_lambda, const IsometryOptions& opts = {});

/// Weighted inner product ⟨F, K(·,P)⟩ over the tube grid with the heat
/// reproducing kernel; equals c_λ F(P) in exact arithmetic.
Complex reproduce_at(const TubeSamples& F, double a, double lambda, std::span<const Complex> P);

}  // namespace heis
