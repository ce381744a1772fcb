#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heis/bergman.hpp"
#include "heis/quad.hpp"
#include "heis/weyl.hpp"

namespace heis {

enum class Verdict { Converged, Diverging, Inconclusive };

std::string to_string(Verdict v);

/// Threshold of the converged rule: final increment < kConvergedTol·(1 + final).
inline constexpr double kConvergedTol = 1e-10;
/// Each of the last increments must shrink at least by this factor, else diverging.
inline constexpr double kDecayFactor = 0.9;

/// Partial integrals of a non-negative functional over nested balls |·| ≤ R.
struct FunctionalProfile {
  std::vector<double> radii;
  std::vector<double> partials;
  Verdict verdict = Verdict::Inconclusive;
  std::string notes;

  std::vector<double> increments() const;
};

/// converged if the last increment is below kConvergedTol·(1 + final); diverging
/// if the last three increments fail to shrink by kDecayFactor per step;
/// inconclusive otherwise.
Verdict classify(std::span<const double> partials);

/// Accumulates shell sums of non-negative terms so the partials are exactly
/// non-decreasing. radius(i) and term(i) describe the quadrature points.
FunctionalProfile accumulate_profile(std::span<const double> radii, std::size_t count,
                                     const std::function<double(std::size_t)>& radius,
                                     const std::function<double(std::size_t)>& term);

/// Unitary Fourier transform (2π)^{-1/2} ∫ f(y) e^{-iyξ} dy sampled on the same
/// 1-D grid (direct sum).
SampledFunction fourier_transform(const SampledFunction& f);

struct BeurlingProfiles {
  FunctionalProfile w0;  // ∫∫ |f(y)||f̂(ξ)| e^{|yξ|}, cut off at |(y,ξ)| ≤ R
  FunctionalProfile w1;  // ∫ |f(y)| sup_{|u|≤|y|} ∫ |f̂(ξ)| e^{-uξ} dξ dy, |y| ≤ R
  double parseval_rel_err = 0.0;
};

/// Euclidean Beurling functionals on ℝ (1-D grids). Throws
/// std::invalid_argument if ‖f‖₂ and ‖f̂‖₂ differ by more than 1e-6 relative.
BeurlingProfiles beurling_euclidean(const SampledFunction& f, const SampledFunction& fhat,
                                    std::span<const double> radii);

/// Value of a strip integral with the resolution that certified it.
struct StripValue {
  Complex value = 0.0;
  bool converged = false;
  double extent = 0.0;
  double step = 0.0;
  std::string notes;
};

struct StripOptions {
  double extent = 6.0;         // initial half-width
  double step = 0.25;          // initial spacing
  double rel_tol = 1e-13;      // stop when both refinements change less than this
  std::size_t budget = 4000000; // maximal number of grid points per evaluation
};

/// F(ζ) = (2π)^{n/2} ∫_{ℝⁿ} conj(f(y)) f(ζy) dy. The trapezoid rule is refined
/// (extent doubled or step halved) until the value is stable; divergence is
/// reported through converged = false, never thrown.
StripValue hedenmalm_F(const EntireFn& f, int n, Complex zeta, const StripOptions& opts = {});

/// G(ζ) = (1+ζ²)^{n/2} F(ζ) with the principal branch.
Complex hedenmalm_G(Complex F, int n, Complex zeta);

/// F_λ(ζ) = ∫_{ℝ²ⁿ} conj(f(y,v)) f(ζy, ζv) dy dv for an entire extension of f^λ.
StripValue F_lambda(const EntireFn& fl, int n, double lambda, Complex zeta,
                    const StripOptions& opts = {});

struct HeisenbergBeurlingOptions {
  int directions = 8;       // polar net directions
  int net_radii = 8;        // polar net radii per ball, boundary included
  int table_refine = 8;     // radial table step = profile step / table_refine
  bool check_consistency = true;
  double consistency_tol = 1e-4;
};

/// Trace-norm weight r ↦ sup over the polar net of the ball of radius r of
/// ‖π_λ(i(y′,v′)) f̂‖₁ (n = 1). Radii beyond the π_λ range guard are rejected.
class TraceNormWeight {
 public:
  TraceNormWeight(const OperatorMatrix& fhat, double r_max, double table_step,
                  const HeisenbergBeurlingOptions& opts = {});

  /// Directional maximum S(r) at a table node.
  const std::vector<double>& table() const { return table_; }
  double table_step() const { return step_; }
  double operator()(double r) const;

 private:
  double interp(double r) const;
  std::vector<double> table_;
  double step_;
  int net_radii_;
};

/// Partial integrals of ∫ |f^λ(y,v)| w_λ(f̂,(y,v)) dy dv over |(y,v)| ≤ R (n = 1).
/// Radii beyond 6/√|λ| are dropped with a note.
FunctionalProfile heisenberg_beurling(const OperatorMatrix& fhat, const SampledFunction& fl,
                                      std::span<const double> radii,
                                      const HeisenbergBeurlingOptions& opts = {});

struct HardyWindow {
  double delta = 0.0;
  double limit = 0.0;      // λ → 0 value of λcoth(2b′λ), i.e. (2b′)^{-1}
  double threshold = 0.0;  // (2a)^{-1}
  bool certified = false;  // h(δ⁻) < threshold and, if δ < 1, h(δ⁺) ≥ threshold
  std::vector<std::pair<double, double>> table;  // λ ↦ λcoth(2b′λ)
};

/// λ ↦ λcoth(2b′λ), continuous at 0.
double hardy_h(double bprime, double lambda);

/// Largest δ ≤ 1 with λcoth(2b′λ) < (2a)^{-1} on (0, δ), by bisection to 1e-10.
/// Requires a < b′ < b.
HardyWindow hardy_window(double a, double b, double bprime);

struct HardyBeurlingResult {
  double exponent = 0.0;  // coefficient of r² in the log of the integrand
  bool finite = false;
  double value = 0.0;     // +inf when diverging
  double closed_form = 0.0;
};

/// ∫ e^{-(|y|²+|v|²)/(4a)} √(p_{2b′}^λ(2iy,2iv)) dy dv by polar quadrature.
HardyBeurlingResult hardy_beurling_integral(double a, double bprime, double lambda, int n);

struct CowlingPriceResult {
  double C = 0.0;                 // fitted constant (max ratio)
  double lambda_integral = 0.0;   // ∫ (λ/sinh aλ)^{2n} dλ over [-Λ, Λ]
  double lambda_integral_doubled = 0.0;  // same over [-2Λ, 2Λ]
  double analytic_C = 0.0;        // (4π)^{-2n}
};

/// Fits C in ∫(p_a^λ(y,v))² dλ ≤ C e^{-(|y|²+|v|²)/(2a)} ∫(λ/sinh aλ)^{2n} dλ
/// over radial samples r ∈ [0, r_max].
CowlingPriceResult cowling_price_bound(double a, double lambda_max, int n, double r_max = 6.0,
                                       int radial_points = 61);

/// P_k f(z) = ∫ f(y) Φ_k(z, y) dy over the grid of f (ℝⁿ).
Complex hermite_projection(const SampledFunction& f, int k, std::span<const Complex> z);

/// ‖P_k f‖₂, k = 0..kmax, from the Hermite coefficients of f.
std::vector<double> hermite_projection_norms(const SampledFunction& f, int kmax);

/// π^{-n/4} ‖P_k f‖₂ √(φ_k^{n-1}(2iy)) with y = Im z.
double hermite_projection_bound(int k, int n, double norm, std::span<const Complex> z);

/// Σ_k ∫_{|y|≤R} |f(y)| ‖P_k f‖₂ √(φ_k^{n-1}(2iy)) dy over the grid of f.
FunctionalProfile beurling_hermite(const SampledFunction& f, int kmax,
                                   std::span<const double> radii);

/// Same functional for a radial bound |f(y)| ≤ abs_f(|y|) and prescribed
/// ‖P_k f‖₂ (n = 1, Gauss–Legendre in y).
FunctionalProfile beurling_hermite_synthetic(const std::function<double(double)>& abs_f,
                                             std::span<const double> norms,
                                             std::span<const double> radii);

struct MajorantValue {
  double series = 0.0;
  double closed_form = 0.0;
  double rel_err = 0.0;
};

/// Σ_k e^{-b′(2k+n)} φ_k^{n-1}(2iy) against e^{coth(b′)|y|²}/(2 sinh b′)^n.
/// Throws std::runtime_error if the last term is not below 1e-12 of the sum.
MajorantValue hermite_heat_majorant(double bprime, std::span<const double> y, int kmax);

}  // namespace heis
