#include "heis/bergman.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "heis/parallel.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) {
  if (v < 0.0) throw std::invalid_argument("SpectralCoefficients: negative value");
  return v == 0.0 ? kNegInf : std::log(v);
}

// |S^{2n-1}| = 2π^n / Γ(n)
double sphere_area(int n) { return 2.0 * std::pow(kPi, n) / std::tgamma(double(n)); }

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

void require_n1_grid(const Grid& g, const char* who) {
  if (g.dim() != 2) throw std::invalid_argument(std::string(who) + ": n = 1 grids only");
}

void imag_guard(std::span<const Complex> zw, double lambda) {
  double r2 = 0.0;
  for (const auto& c : zw) r2 += c.imag() * c.imag();
  if (std::sqrt(r2) > kImagRadius / std::sqrt(std::abs(lambda)) * (1.0 + 1e-12))
    throw std::out_of_range("imaginary part exceeds the supported radius 6/sqrt|lambda|");
}

}  // namespace

SpectralCoefficients::SpectralCoefficients(Meaning m, std::vector<double> values) : meaning(m) {
  log_values.reserve(values.size());
  for (double v : values) log_values.push_back(safe_log(v));
}

SpectralCoefficients SpectralCoefficients::from_log(Meaning m, std::vector<double> logs) {
  SpectralCoefficients c;
  c.meaning = m;
  c.log_values = std::move(logs);
  return c;
}

double SpectralCoefficients::value(std::size_t k) const { return std::exp(log_values.at(k)); }

std::vector<double> SpectralCoefficients::values() const {
  std::vector<double> v(log_values.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(log_values[k]);
  return v;
}

double multiplicity_factor(int k, int n) { return 1.0 / laguerre_dimension(k, n); }

SpectralCoefficients spectral_norms(const OperatorMatrix& ghat, int kmax) {
  const BasisSpec& b = ghat.basis();
  if (kmax > b.K()) throw std::invalid_argument("spectral_norms: kmax exceeds basis degree");
  const double scale = std::pow(2.0 * kPi / std::abs(b.lambda()), b.n());
  std::vector<double> v(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    auto [lo, hi] = b.degree_block(k);
    v[k] = scale * ghat.entries().middleCols(lo, hi - lo).squaredNorm();
  }
  return SpectralCoefficients(SpectralCoefficients::Meaning::Norms, std::move(v));
}

SpectralCoefficients spectral_norms_direct(const SampledFunction& g, double lambda, int kmax) {
  require_n1_grid(g.grid, "spectral_norms_direct");
  std::vector<double> v(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    auto phi = laguerre_fn_grid(k, 1, lambda, g.grid);
    v[k] = twisted_conv(g, phi, lambda).l2_norm_sq();
  }
  return SpectralCoefficients(SpectralCoefficients::Meaning::Norms, std::move(v));
}

Complex segal_bargmann(const SampledFunction& g, double a, double lambda,
                       std::span<const Complex> zw) {
  require_n1_grid(g.grid, "segal_bargmann");
  if (zw.size() != 2) throw std::invalid_argument("segal_bargmann: expected (z, w)");
  imag_guard(zw, lambda);
  const double pre = sinh_factor(a, lambda) / (4.0 * kPi);
  const double kap = coth_factor(a, lambda);
  const Complex z = zw[0], w = zw[1];
  const Complex I(0, 1);
  return deterministic_sum<Complex>(g.grid.size(), [&](std::size_t i) {
    double p[2];
    g.grid.point(i, p);
    const Complex dz = z - p[0], dw = w - p[1];
    return g.values[i] * g.grid.weight(i) * pre * std::exp(-0.25 * kap * (dz * dz + dw * dw)) *
           std::exp(0.5 * I * lambda * (p[1] * z - w * p[0]));
  });
}

GutzmerOptions default_gutzmer_options(int n, double lambda, std::uint64_t seed) {
  GutzmerOptions o;
  if (n == 1) {
    o.grid = Grid(2, 8.0 / std::sqrt(std::min(std::abs(lambda), 1.0)), 129);
    o.rule = unitary_rule(1, 64, seed);
  } else {
    o.grid = Grid(2 * n, 6.0, 49);
    o.rule = unitary_rule(n, 64, seed);
  }
  return o;
}

GutzmerValue gutzmer_lhs(const EntireFn& G, double lambda, int n, std::span<const double> yv,
                         const GutzmerOptions& opts) {
  if (yv.size() != 2 * static_cast<std::size_t>(n) || opts.grid.dim() != 2 * n)
    throw std::invalid_argument("gutzmer_lhs: dimension mismatch");
  const Grid& grid = opts.grid;
  const std::size_t S = opts.rule.samples.size();
  std::vector<double> inner(S);
  bool boundary_ok = true;
  for (std::size_t s = 0; s < S; ++s) {
    const auto rot = apply_real(opts.rule.samples[s], yv);
    std::vector<double> vals(grid.size());
    parallel_for((grid.size() + 1023) / 1024, [&](std::size_t b) {
      std::vector<double> X(2 * n);
      std::vector<Complex> Z(2 * n);
      const std::size_t end = std::min(grid.size(), (b + 1) * 1024);
      for (std::size_t i = b * 1024; i < end; ++i) {
        grid.point(i, X.data());
        for (int j = 0; j < 2 * n; ++j) Z[j] = Complex(X[j], rot[j]);
        vals[i] = std::norm(G(Z)) * std::exp(lambda * symplectic_form(X, yv));
      }
    });
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      peak = std::max(peak, vals[i]);
      if (grid.on_boundary(i)) edge = std::max(edge, vals[i]);
    }
    if (peak > 0.0 && edge > kBoundaryDecay * peak) boundary_ok = false;
    if (!std::isfinite(peak)) throw std::runtime_error("gutzmer_lhs: integrand overflow");
    inner[s] = deterministic_sum<double>(vals.size(), [&](std::size_t i) {
      return vals[i] * grid.weight(i);
    });
  }
  GutzmerValue r;
  std::vector<double> wv(S);
  for (std::size_t s = 0; s < S; ++s) wv[s] = opts.rule.weights[s] * inner[s];
  r.value = tree_reduce(wv);
  double lo = inner[0], hi = inner[0];
  for (double v : inner) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.sigma_spread = r.value > 0.0 ? (hi - lo) / r.value : 0.0;
  if (opts.rule.monte_carlo && S > 1) {
    double ss = 0.0;
    for (double v : inner) ss += (v - r.value) * (v - r.value);
    r.std_error = std::sqrt(ss / (S - 1) / S);
  }
  r.boundary_ok = boundary_ok;
  if (!boundary_ok) r.notes += "integrand does not decay at the grid boundary; ";
  if (r.sigma_spread > opts.sigma_tol)
    r.notes += "inner integral depends on the rotation (spread " + std::to_string(r.sigma_spread) + "); ";
  return r;
}

double gutzmer_rhs(const SpectralCoefficients& norms, double lambda, int n,
                   std::span<const double> yv, double c) {
  if (yv.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("gutzmer_rhs: dimension mismatch");
  const double r = norm2(yv);
  std::vector<double> terms(norms.size());
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const double nk = norms.value(k);
    terms[k] = nk == 0.0 ? 0.0
                         : multiplicity_factor(int(k), n) * phi_imag_radial(int(k), n, lambda, r) * nk;
  }
  const double last = terms.empty() ? 0.0 : terms.back();
  const double sum = tree_reduce(terms);
  if (last > 1e-12 * sum) throw std::runtime_error("gutzmer_rhs: coefficient tail not below 1e-12");
  return c * sum;
}

double gutzmer_constant(int n, double lambda) {
  const double b = std::pow(std::abs(lambda) / (2.0 * kPi), n);
  return b * b;
}

double orbital_constant(int n, double lambda) { return std::pow(std::abs(lambda) / (2.0 * kPi), n); }

SpectralCoefficients heat_kernel_norms(double t, double lambda, int n, int kmax) {
  std::vector<double> logs(kmax + 1);
  const double l = std::abs(lambda);
  for (int k = 0; k <= kmax; ++k)
    logs[k] = -2.0 * t * (2.0 * k + n) * l + n * std::log(2.0 * kPi / l) +
              std::log(laguerre_dimension(k, n));
  return SpectralCoefficients::from_log(SpectralCoefficients::Meaning::Norms, std::move(logs));
}

OrbitalValue orbital_hs_identity(const OperatorMatrix& fhat, std::span<const Complex> zw,
                                 const UnitaryRule& rule, const SpectralCoefficients& norms,
                                 double c) {
  const BasisSpec& b = fhat.basis();
  const int n = b.n();
  if (zw.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("orbital_hs_identity: dimension mismatch");
  imag_guard(zw, b.lambda());
  OrbitalValue out;
  auto avg = unitary_average(rule, [&](const UnitarySample& s) {
    const Eigen::MatrixXd& E = s.real_embedding;
    std::vector<Complex> z(n), w(n);
    for (int i = 0; i < n; ++i) {
      Complex zi = 0.0, wi = 0.0;
      for (int j = 0; j < 2 * n; ++j) {
        zi += E(i, j) * zw[j];
        wi += E(n + i, j) * zw[j];
      }
      z[i] = zi;
      w[i] = wi;
    }
    return (pi_complex(z, w, b).entries().adjoint() * fhat.entries()).squaredNorm();
  });
  out.lhs = avg.mean;
  out.std_error = avg.std_error;
  std::vector<double> X(2 * n), Y(2 * n);
  for (int j = 0; j < 2 * n; ++j) {
    X[j] = zw[j].real();
    Y[j] = zw[j].imag();
  }
  const double rhs_sum = gutzmer_rhs(norms, b.lambda(), n, Y, 1.0);
  out.rhs = c * std::exp(-b.lambda() * symplectic_form(X, Y)) * rhs_sum;
  return out;
}

double RadialWeight::value(std::span<const double> yv) const { return radial(norm2(yv)); }

RadialWeight heat_weight(double t, double lambda, int n) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_weight: t must be positive");
  RadialWeight w;
  w.n = n;
  w.lambda = lambda;
  w.label = "heat p_{2t}(2y,2v), t=" + std::to_string(t);
  const double pre = std::pow(sinh_factor(2.0 * t, lambda) / (4.0 * kPi), n);
  const double kap = coth_factor(2.0 * t, lambda);
  const double l = std::abs(lambda);
  // κ − |λ| = 2|λ| e^{-2x}/(1 − e^{-2x}), x = 2t|λ|
  const double x = 2.0 * t * l;
  const double excess = x < 1e-4 ? kap - l : 2.0 * l * std::exp(-2.0 * x) / (-std::expm1(-2.0 * x));
  w.radial = [=](double r) { return pre * std::exp(-kap * r * r); };
  w.radial_growth = [=](double r) { return pre * std::exp(-excess * r * r); };
  return w;
}

namespace {

// ∫₀^∞ tⁿ e^{-t^s/s} p_t(2r) [e^{|λ|r²} if growth] dt on a grid stretched toward t = 0
double superposition_integral(double s, double lambda, int n, double r, bool growth) {
  const double l = std::abs(lambda);
  // the growth integrand peaks near t ≈ ln r
  const double T = std::pow(s * 80.0, 1.0 / s) + 2.0 + (growth ? 2.0 * std::log1p(r) : 0.0);
  auto f = [&](double tau) {
    const double t = T * tau * tau;
    if (t <= 0.0) return 0.0;
    const double pre = std::pow(sinh_factor(t, lambda) / (4.0 * kPi), n);
    const double kap = coth_factor(t, lambda);
    const double x = t * l;
    double ex;
    if (growth)
      ex = x < 1e-4 ? kap - l : 2.0 * l * std::exp(-2.0 * x) / (-std::expm1(-2.0 * x));
    else
      ex = kap;
    return std::pow(t, n) * std::exp(-std::pow(t, s) / s) * pre * std::exp(-ex * r * r) * 2.0 * T * tau;
  };
  return integrate_panels(f, 0.0, 1.0, 160, 20);
}

}  // namespace

RadialWeight superposition_weight_fn(double s, double lambda, int n) {
  if (!(s > 1.0)) throw std::invalid_argument("superposition_weight: s must exceed 1");
  RadialWeight w;
  w.n = n;
  w.lambda = lambda;
  w.label = "superposition s=" + std::to_string(s);
  w.radial = [=](double r) { return superposition_integral(s, lambda, n, r, false); };
  w.radial_growth = [=](double r) { return superposition_integral(s, lambda, n, r, true); };
  return w;
}

double superposition_weight(double s, double lambda, std::span<const double> yv) {
  if (!(s > 1.0)) throw std::invalid_argument("superposition_weight: s must exceed 1");
  const int n = static_cast<int>(yv.size() / 2);
  return superposition_integral(s, lambda, n, norm2(yv), false);
}

SpectralCoefficients weight_to_coefficients(const RadialWeight& w, int kmax,
                                            const PolarOptions& opts) {
  const int n = w.n;
  const double l = std::abs(w.lambda);
  const auto& gl = gauss_legendre(20);
  std::vector<double> acc(kmax + 1, 0.0);
  const double area = sphere_area(n);
  auto integrand = [&](double r, std::vector<double>& out) {
    const double g = w.radial_growth(r);
    const auto L = laguerre_sequence(kmax, n - 1.0, -2.0 * l * r * r);
    const double base = area * std::pow(r, 2 * n - 1) * g;
    for (int k = 0; k <= kmax; ++k) out[k] = multiplicity_factor(k, n) * L[k] * base;
  };
  std::vector<double> vals(kmax + 1), panel(kmax + 1);
  const double width = opts.log_radius ? 0.1 : 0.25;
  double lo = opts.log_radius ? opts.log_r_min : 0.0;
  const double hi_cap = opts.log_radius ? std::log(opts.r_max) : opts.r_max;
  bool converged = false;
  while (lo < hi_cap) {
    const double hi = lo + width;
    std::fill(panel.begin(), panel.end(), 0.0);
    for (int i = 0; i < gl.order; ++i) {
      const double v = lo + 0.5 * width * (gl.nodes[i] + 1.0);
      const double r = opts.log_radius ? std::exp(v) : v;
      const double jac = opts.log_radius ? r : 1.0;
      integrand(r, vals);
      for (int k = 0; k <= kmax; ++k) panel[k] += 0.5 * width * gl.weights[i] * vals[k] * jac;
    }
    for (int k = 0; k <= kmax; ++k) {
      acc[k] += panel[k];
      if (!std::isfinite(acc[k]))
        throw std::runtime_error("weight_to_coefficients: integrand overflow (" + w.label + ")");
    }
    const double r_end = opts.log_radius ? std::exp(hi) : hi;
    integrand(r_end, vals);
    bool small = true;
    for (int k = 0; k <= kmax; ++k) {
      const double edge = std::abs(vals[k]) * (opts.log_radius ? r_end : 1.0);
      if (std::abs(panel[k]) > opts.tail_tol * std::abs(acc[k]) || edge > opts.tail_tol * std::abs(acc[k]))
        small = false;
    }
    lo = hi;
    if (small && (opts.log_radius || lo > 1.0)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error("weight_to_coefficients: integrand tail not below tolerance by r_max (" +
                             w.label + ")");
  for (auto& v : acc) v = std::max(v, 0.0);
  return SpectralCoefficients(SpectralCoefficients::Meaning::Weights, std::move(acc));
}

SpectralCoefficients superposition_coefficients(double s, double lambda, int n, int kmax) {
  if (!(s > 1.0)) throw std::invalid_argument("superposition_coefficients: s must exceed 1");
  const double l = std::abs(lambda);
  std::vector<double> logs(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    const double A = (2.0 * k + n) * l;
    auto f = [&](double t) { return n * std::log(t) - std::pow(t, s) / s + t * A; };
    // peak: n/t + A = t^{s-1}
    double lo = 1e-12, hi = std::pow(A + n + 1.0, 1.0 / (s - 1.0)) + 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (n / mid + A - std::pow(mid, s - 1.0) > 0.0) lo = mid; else hi = mid;
    }
    const double tstar = 0.5 * (lo + hi);
    const double fstar = f(tstar);
    double T = tstar;
    while (f(T) - fstar > -60.0) T += 0.5;
    const double I = integrate_panels(
        [&](double t) { return t <= 0.0 ? 0.0 : std::exp(f(t) - fstar); }, 0.0, T, 400, 20);
    logs[k] = fstar + std::log(I) - n * std::log(4.0);
  }
  return SpectralCoefficients::from_log(SpectralCoefficients::Meaning::Weights, std::move(logs));
}

Complex kernel_from_weight(const SpectralCoefficients& weights, double lambda, int n,
                           std::span<const Complex> zw, int kmax, double tol) {
  if (zw.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("kernel_from_weight: expected 2n coordinates");
  if (kmax + 1 > static_cast<int>(weights.size()))
    throw std::invalid_argument("kernel_from_weight: kmax exceeds available coefficients");
  const double l = std::abs(lambda);
  const Complex q = bilinear_square(zw);
  const auto L = laguerre_sequence(kmax, n - 1.0, 0.5 * l * q);
  const auto Lmaj = laguerre_sequence(kmax, n - 1.0, -0.5 * l * std::abs(q));
  const Complex g = std::exp(-0.25 * l * q);
  const double gmaj = std::abs(g);
  std::vector<Complex> terms(kmax + 1);
  std::vector<double> maj(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    const double inv = std::exp(-0.5 * weights.log_values[k]);
    terms[k] = inv * L[k] * g;
    maj[k] = inv * Lmaj[k] * gmaj;
  }
  const double pre = std::pow(l / (2.0 * kPi), n);
  // geometric majorant tail over the last few terms
  const int w = std::min(5, kmax);
  double ratio = 0.0;
  for (int k = kmax - w + 1; k <= kmax; ++k)
    if (maj[k - 1] > 0.0) ratio = std::max(ratio, maj[k] / maj[k - 1]);
  const double tail = ratio < 1.0 ? pre * maj[kmax] * ratio / (1.0 - ratio)
                                  : std::numeric_limits<double>::infinity();
  if (!(tail < tol))
    throw std::runtime_error("kernel_from_weight: insufficient decay of C(k)^{-1/2} (tail bound " +
                             std::to_string(tail) + ")");
  return pre * tree_reduce(std::move(terms));
}

Complex reproducing_kernel_heat(double a, double lambda, int n, std::span<const Complex> P,
                                std::span<const Complex> Q) {
  const std::size_t m = 2 * static_cast<std::size_t>(n);
  if (P.size() != m || Q.size() != m) throw std::invalid_argument("reproducing_kernel: dimension mismatch");
  std::vector<Complex> d(m);
  Complex form = 0.0;
  for (int j = 0; j < n; ++j) {
    form += P[n + j] * std::conj(Q[j]) - P[j] * std::conj(Q[n + j]);
    d[j] = P[j] - std::conj(Q[j]);
    d[n + j] = P[n + j] - std::conj(Q[n + j]);
  }
  const Complex I(0, 1);
  return std::exp(-0.5 * I * lambda * form) * heat_kernel(KernelParams(2.0 * a, lambda, n), d);
}

Complex reproducing_kernel(const EntireFn& q, double lambda, const Grid& grid,
                           std::span<const Complex> P, std::span<const Complex> Q) {
  const std::size_t m = P.size();
  const int n = static_cast<int>(m / 2);
  if (Q.size() != m || grid.dim() != static_cast<int>(m))
    throw std::invalid_argument("reproducing_kernel: dimension mismatch");
  std::vector<Complex> d(m);
  Complex form = 0.0;
  for (int j = 0; j < n; ++j) {
    form += P[n + j] * std::conj(Q[j]) - P[j] * std::conj(Q[n + j]);
    d[j] = P[j] - std::conj(Q[j]);
    d[n + j] = P[n + j] - std::conj(Q[n + j]);
  }
  imag_guard(d, lambda);
  const Complex I(0, 1);
  const Complex qq = deterministic_sum<Complex>(grid.size(), [&](std::size_t i) {
    std::vector<double> Y = grid.point(i);
    std::vector<Complex> diff(m);
    Complex br = 0.0;  // [Δ, Y] = Δ_w·y − v·Δ_z
    for (int j = 0; j < n; ++j) {
      br += d[n + j] * Y[j] - Y[n + j] * d[j];
    }
    for (std::size_t j = 0; j < m; ++j) diff[j] = d[j] - Y[j];
    std::vector<Complex> Yc(Y.begin(), Y.end());
    return q(diff) * q(Yc) * std::exp(0.5 * I * lambda * br) * grid.weight(i);
  });
  return std::exp(-0.5 * I * lambda * form) * qq;
}

TubeSamples segal_bargmann_tube(const SampledFunction& g, double a, double lambda,
                                const TubeOptions& opts) {
  require_n1_grid(g.grid, "segal_bargmann_tube");
  const std::size_t total = std::size_t(opts.real_points) * opts.real_points * opts.imag_points *
                            opts.imag_points;
  if (total > opts.budget)
    throw std::invalid_argument("segal_bargmann_tube: grid exceeds the configured 4-D budget");
  TubeSamples T;
  Grid rg(1, opts.real_extent, opts.real_points), ig(1, opts.imag_extent, opts.imag_points);
  T.xs = T.us = rg.axis_coords(0);
  T.ys = T.vs = ig.axis_coords(0);
  T.hx = T.hu = rg.spacing(0);
  T.hy = T.hv = ig.spacing(0);
  if (opts.imag_extent > kImagRadius / std::sqrt(std::abs(lambda)))
    throw std::out_of_range("segal_bargmann_tube: imaginary extent beyond the supported radius");

  const Grid& G = g.grid;
  const int ns = G.points(0), nt = G.points(1);
  const auto ss = G.axis_coords(0), ts = G.axis_coords(1);
  Eigen::MatrixXcd gm(ns, nt);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nt; ++j) {
      const std::size_t f = std::size_t(i) * nt + j;
      gm(i, j) = g.values[f] * G.weight(f);
    }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(gm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv[rank] > opts.rank_tol * sv[0]) ++rank;
  const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXcd V = svd.matrixV().leftCols(rank).conjugate();

  const double pre = sinh_factor(a, lambda) / (4.0 * kPi);
  const double kap = coth_factor(a, lambda);
  const Complex I(0, 1);
  const std::size_t nx = T.xs.size(), nu = T.us.size(), ny = T.ys.size(), nv = T.vs.size();
  T.values.assign(nx * nu * ny * nv, 0.0);
  parallel_for(ny * nv, [&](std::size_t idx) {
    const std::size_t iy = idx / nv, iv = idx % nv;
    const double yI = T.ys[iy], vI = T.vs[iv];
    Eigen::MatrixXcd P1(nx, ns), Q2(nx, nt), P2(nu, ns), Q1(nu, nt);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const Complex z(T.xs[ix], yI);
      for (int s = 0; s < ns; ++s) P1(ix, s) = std::exp(-0.25 * kap * (z - ss[s]) * (z - ss[s]));
      for (int t = 0; t < nt; ++t) Q2(ix, t) = std::exp(0.5 * I * lambda * ts[t] * z);
    }
    for (std::size_t iu = 0; iu < nu; ++iu) {
      const Complex w(T.us[iu], vI);
      for (int s = 0; s < ns; ++s) P2(iu, s) = std::exp(-0.5 * I * lambda * w * ss[s]);
      for (int t = 0; t < nt; ++t) Q1(iu, t) = std::exp(-0.25 * kap * (w - ts[t]) * (w - ts[t]));
    }
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(nx, nu);
    for (int r = 0; r < rank; ++r) {
      Eigen::MatrixXcd A = P1 * U.col(r).asDiagonal();
      Eigen::MatrixXcd B = Q2 * V.col(r).asDiagonal();
      Eigen::MatrixXcd M1 = A * P2.transpose();
      Eigen::MatrixXcd M2 = B * Q1.transpose();
      F += sv[r] * M1.cwiseProduct(M2);
    }
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iu = 0; iu < nu; ++iu)
        T.values[((iy * nv + iv) * nx + ix) * nu + iu] = pre * F(ix, iu);
  });
  return T;
}

namespace {

double trapezoid_w(std::size_t i, std::size_t n, double h) { return (i == 0 || i + 1 == n) ? 0.5 * h : h; }

}  // namespace

IsometryValue bergman_isometry(const SampledFunction& g, double a, double lambda, IsometryMode mode,
                               double c_lambda, const IsometryOptions& opts) {
  require_n1_grid(g.grid, "bergman_isometry");
  IsometryValue out;
  out.norm_sq = g.l2_norm_sq();
  out.rhs = c_lambda * out.norm_sq;
  const int n = 1;
  if (mode == IsometryMode::Series) {
    BasisSpec basis(1, lambda, opts.K);
    auto norms = spectral_norms(weyl_transform(g, basis), opts.kmax);
    auto C = weight_to_coefficients(heat_weight(a, lambda, n), opts.kmax);
    std::vector<double> terms(opts.kmax + 1);
    for (int k = 0; k <= opts.kmax; ++k)
      terms[k] = std::exp(-2.0 * a * (2.0 * k + n) * std::abs(lambda)) * norms.value(k) * C.value(k);
    out.lhs = gutzmer_constant(n, lambda) * tree_reduce(std::move(terms));
    return out;
  }
  const auto T = segal_bargmann_tube(g, a, lambda, opts.tube);
  const auto W = heat_weight(a, lambda, n);
  const std::size_t nx = T.xs.size(), nu = T.us.size(), ny = T.ys.size(), nv = T.vs.size();
  std::vector<double> parts(ny * nv);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double yI = T.ys[iy], vI = T.vs[iv];
      const double wY = W.radial(std::hypot(yI, vI)) * trapezoid_w(iy, ny, T.hy) * trapezoid_w(iv, nv, T.hv);
      double s = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iu = 0; iu < nu; ++iu)
          s += std::norm(T.at(ix, iy, iu, iv)) * std::exp(lambda * (T.us[iu] * yI - vI * T.xs[ix])) *
               trapezoid_w(ix, nx, T.hx) * trapezoid_w(iu, nu, T.hu);
      parts[iy * nv + iv] = wY * s;
    }
  out.lhs = tree_reduce(std::move(parts));
  return out;
}

Complex reproduce_at(const TubeSamples& F, double a, double lambda, std::span<const Complex> P) {
  const auto W = heat_weight(a, lambda, 1);
  const std::size_t nx = F.xs.size(), nu = F.us.size(), ny = F.ys.size(), nv = F.vs.size();
  std::vector<Complex> parts(ny * nv);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double yI = F.ys[iy], vI = F.vs[iv];
      const double wY = W.radial(std::hypot(yI, vI)) * trapezoid_w(iy, ny, F.hy) * trapezoid_w(iv, nv, F.hv);
      Complex s = 0.0;
      for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iu = 0; iu < nu; ++iu) {
          const Complex Q[2] = {Complex(F.xs[ix], yI), Complex(F.us[iu], vI)};
          const Complex K = reproducing_kernel_heat(a, lambda, 1, Q, P);
          s += F.at(ix, iy, iu, iv) * std::conj(K) *
               std::exp(lambda * (F.us[iu] * yI - vI * F.xs[ix])) * trapezoid_w(ix, nx, F.hx) *
               trapezoid_w(iu, nu, F.hu);
        }
      parts[iy * nv + iv] = wY * s;
    }
  return tree_reduce(std::move(parts));
}

}  // namespace heis
