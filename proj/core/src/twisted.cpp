#include "heis/twisted.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heis/parallel.hpp"

namespace heis {

KernelParams::KernelParams(double a_, double lambda_, int n_) : a(a_), lambda(lambda_), n(n_) {
  if (!(a > 0.0)) throw std::invalid_argument("KernelParams: parameter must be positive");
  if (lambda == 0.0) throw std::invalid_argument("KernelParams: lambda must be nonzero");
  if (n < 1) throw std::invalid_argument("KernelParams: n must be >= 1");
}

namespace {

void require_conv_grid(const Grid& g) {
  if (g.dim() != 2) throw std::invalid_argument("twisted_conv: n = 1 only (grid on R^2)");
  if (g.points(0) % 2 == 0 || g.points(1) % 2 == 0)
    throw std::invalid_argument("twisted_conv: point counts must be odd");
}

}  // namespace

SampledFunction twisted_conv(const SampledFunction& f, const SampledFunction& g, double lambda) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("twisted_conv: grid mismatch");
  const Grid& grid = f.grid;
  require_conv_grid(grid);
  const int nx = grid.points(0), nu = grid.points(1);
  const int cx = (nx - 1) / 2, cu = (nu - 1) / 2;
  const auto xs = grid.axis_coords(0), us = grid.axis_coords(1);

  // weighted g and the two phase tables
  std::vector<Complex> gw(grid.size());
  for (std::size_t i = 0; i < gw.size(); ++i) gw[i] = g.values[i] * grid.weight(i);
  std::vector<Complex> ph_uy(static_cast<std::size_t>(nu) * nx);  // e^{(iλ/2) u_j y_k}
  for (int j = 0; j < nu; ++j)
    for (int k = 0; k < nx; ++k) ph_uy[j * nx + k] = std::polar(1.0, 0.5 * lambda * us[j] * xs[k]);
  std::vector<Complex> ph_vx(static_cast<std::size_t>(nx) * nu);  // e^{-(iλ/2) v_l x_i}
  for (int i = 0; i < nx; ++i)
    for (int l = 0; l < nu; ++l) ph_vx[i * nu + l] = std::polar(1.0, -0.5 * lambda * us[l] * xs[i]);

  std::vector<Complex> out(grid.size(), 0.0);
  parallel_for(nx, [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    std::vector<Complex> B(nu), S(nu);
    Complex* orow = &out[static_cast<std::size_t>(i) * nu];
    for (int k = 0; k < nx; ++k) {
      const int fi = i - k + cx;
      if (fi < 0 || fi >= nx) continue;
      const Complex* frow = &f.values[static_cast<std::size_t>(fi) * nu];
      const Complex* grow = &gw[static_cast<std::size_t>(k) * nu];
      const Complex* pv = &ph_vx[static_cast<std::size_t>(i) * nu];
      for (int l = 0; l < nu; ++l) B[l] = grow[l] * pv[l];
      // S_j = Σ_l f(fi, j−l+cu) B_l
      for (int j = 0; j < nu; ++j) {
        const int lo = std::max(0, j + cu - (nu - 1));
        const int hi = std::min(nu - 1, j + cu);
        Complex s = 0.0;
        for (int l = lo; l <= hi; ++l) s += frow[j - l + cu] * B[l];
        orow[j] += ph_uy[static_cast<std::size_t>(j) * nx + k] * s;
      }
    }
  });
  return SampledFunction(grid, std::move(out), 1, lambda);
}

SampledFunction laguerre_fn_grid(int k, int n, double lambda, const Grid& grid) {
  if (grid.dim() != 2 * n) throw std::invalid_argument("laguerre_fn_grid: grid must live on R^{2n}");
  return sample(
      grid,
      [&](std::span<const double> p) {
        double r2 = 0.0;
        for (double c : p) r2 += c * c;
        return Complex(laguerre_fn_phi_radial(k, n, lambda, r2));
      },
      n, lambda);
}

SampledFunction spectral_projection(const SampledFunction& f, int k, double lambda) {
  if (k < 0) throw std::invalid_argument("spectral_projection: k must be >= 0");
  auto phi = laguerre_fn_grid(k, 1, lambda, f.grid);
  auto c = twisted_conv(f, phi, lambda);
  const double s = std::abs(lambda) / (2.0 * std::numbers::pi);
  for (auto& v : c.values) v *= s;
  return c;
}

SampledFunction spectral_projection_weyl(const SampledFunction& f, int k, const BasisSpec& basis) {
  auto T = weyl_transform(f, basis) * hermite_projector(k, basis);
  return weyl_inverse(T, f.grid);
}

SampledFunction twisted_laplacian(const SampledFunction& f, double lambda) {
  const Grid& grid = f.grid;
  if (grid.dim() != 2) throw std::invalid_argument("twisted_laplacian: grid on R^2 required");
  const int nx = grid.points(0), nu = grid.points(1);
  const double hx = grid.spacing(0), hu = grid.spacing(1);
  auto at = [&](int i, int j) { return f.values[static_cast<std::size_t>(i) * nu + j]; };
  std::vector<Complex> out(grid.size(), 0.0);
  const Complex I(0, 1);
  for (int i = 2; i < nx - 2; ++i) {
    const double x = grid.coord(0, i);
    for (int j = 2; j < nu - 2; ++j) {
      const double u = grid.coord(1, j);
      const Complex fxx = (-at(i + 2, j) + 16.0 * at(i + 1, j) - 30.0 * at(i, j) +
                           16.0 * at(i - 1, j) - at(i - 2, j)) / (12.0 * hx * hx);
      const Complex fuu = (-at(i, j + 2) + 16.0 * at(i, j + 1) - 30.0 * at(i, j) +
                           16.0 * at(i, j - 1) - at(i, j - 2)) / (12.0 * hu * hu);
      const Complex fx = (-at(i + 2, j) + 8.0 * at(i + 1, j) - 8.0 * at(i - 1, j) + at(i - 2, j)) /
                         (12.0 * hx);
      const Complex fu = (-at(i, j + 2) + 8.0 * at(i, j + 1) - 8.0 * at(i, j - 1) + at(i, j - 2)) /
                         (12.0 * hu);
      out[static_cast<std::size_t>(i) * nu + j] =
          -(fxx + fuu) + 0.25 * lambda * lambda * (x * x + u * u) * at(i, j) +
          I * lambda * (u * fx - x * fu);
    }
  }
  return SampledFunction(grid, std::move(out), 1, lambda);
}

double sinh_factor(double a, double lambda) {
  const double l = std::abs(lambda);
  const double x = a * l;
  if (x < 1e-4) {
    const double x2 = x * x;
    return (1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0) / a;
  }
  return 2.0 * l * std::exp(-x) / (-std::expm1(-2.0 * x));
}

double coth_factor(double a, double lambda) {
  const double l = std::abs(lambda);
  const double x = a * l;
  if (x < 1e-4) {
    const double x2 = x * x;
    return (1.0 + x2 / 3.0 - x2 * x2 / 45.0) / a;
  }
  const double e = std::exp(-2.0 * x);
  return l * (1.0 + e) / (-std::expm1(-2.0 * x));
}

Complex heat_kernel(const KernelParams& p, std::span<const Complex> zw) {
  if (zw.size() != 2 * static_cast<std::size_t>(p.n))
    throw std::invalid_argument("heat_kernel: expected 2n coordinates");
  const double pre = std::pow(sinh_factor(p.a, p.lambda) / (4.0 * std::numbers::pi), p.n);
  return pre * std::exp(-0.25 * coth_factor(p.a, p.lambda) * bilinear_square(zw));
}

double heat_kernel_radial(const KernelParams& p, double rho2) {
  const double pre = std::pow(sinh_factor(p.a, p.lambda) / (4.0 * std::numbers::pi), p.n);
  return pre * std::exp(-0.25 * coth_factor(p.a, p.lambda) * rho2);
}

double heat_kernel(const KernelParams& p, std::span<const double> xu) {
  if (xu.size() != 2 * static_cast<std::size_t>(p.n))
    throw std::invalid_argument("heat_kernel: expected 2n coordinates");
  double r2 = 0.0;
  for (double c : xu) r2 += c * c;
  return heat_kernel_radial(p, r2);
}

Complex heat_kernel_series(const KernelParams& p, std::span<const Complex> zw, int terms) {
  if (zw.size() != 2 * static_cast<std::size_t>(p.n))
    throw std::invalid_argument("heat_kernel_series: expected 2n coordinates");
  const double l = std::abs(p.lambda);
  const Complex q = bilinear_square(zw);
  const auto L = laguerre_sequence(std::max(terms - 1, 0), p.n - 1.0, 0.5 * l * q);
  const Complex g = std::exp(-0.25 * l * q);
  std::vector<Complex> parts(terms);
  for (int k = 0; k < terms; ++k) parts[k] = std::exp(-p.a * (2.0 * k + p.n) * l) * L[k] * g;
  return std::pow(l / (2.0 * std::numbers::pi), p.n) * tree_reduce(std::move(parts));
}

std::vector<Complex> poisson_partial_sums(double rho, double lambda, int n,
                                          std::span<const Complex> zw, int terms) {
  if (!(rho > 0.0)) throw std::invalid_argument("poisson: rho must be positive");
  if (zw.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("poisson: expected 2n coordinates");
  const double l = std::abs(lambda);
  const Complex q = bilinear_square(zw);
  const auto L = laguerre_sequence(std::max(terms - 1, 0), n - 1.0, 0.5 * l * q);
  const Complex g = std::exp(-0.25 * l * q);
  const double pre = std::pow(l / (2.0 * std::numbers::pi), n);
  std::vector<Complex> out(terms);
  Complex s = 0.0;
  for (int k = 0; k < terms; ++k) {
    s += std::exp(-rho * std::sqrt((2.0 * k + n) * l)) * L[k] * g;
    out[k] = pre * s;
  }
  return out;
}

int poisson_terms_needed(double rho, double lambda, int n) {
  // e^{-ρ√((2k+n)|λ|)} < 1e-14  ⇔  (2k+n)|λ| > (ln 1e14/ρ)²
  const double target = std::pow(std::log(1e14) / rho, 2) / std::abs(lambda);
  const int k = static_cast<int>(std::ceil((target - n) / 2.0)) + 1;
  return std::max(k + 1, 1);
}

Complex poisson_kernel(double rho, double lambda, int n, std::span<const Complex> zw, int terms) {
  if (terms < 1) throw std::invalid_argument("poisson_kernel: terms must be >= 1");
  const double last = std::exp(-rho * std::sqrt((2.0 * (terms - 1) + n) * std::abs(lambda)));
  if (!(last < 1e-14))
    throw std::runtime_error("poisson_kernel: tail bound " + std::to_string(last) +
                             " not below 1e-14; increase terms");
  return poisson_partial_sums(rho, lambda, n, zw, terms).back();
}

HeatTimeResult heat_kernel_time(double a, std::span<const double> x, std::span<const double> u,
                                double t, const Grid& lambda_grid) {
  if (!(a > 0.0)) throw std::invalid_argument("heat_kernel_time: a must be positive");
  if (x.size() != u.size()) throw std::invalid_argument("heat_kernel_time: dimension mismatch");
  if (lambda_grid.dim() != 1) throw std::invalid_argument("heat_kernel_time: 1-D lambda grid required");
  const int n = static_cast<int>(x.size());
  double r2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) r2 += x[j] * x[j] + u[j] * u[j];
  auto integrand = [&](double l) -> double {
    const double pre = std::pow(sinh_factor(a, l) / (4.0 * std::numbers::pi), n);
    return std::cos(l * t) * pre * std::exp(-0.25 * coth_factor(a, l) * r2);
  };
  auto env = [&](double l) {
    return std::pow(sinh_factor(a, l) / (4.0 * std::numbers::pi), n) *
           std::exp(-0.25 * coth_factor(a, l) * r2);
  };
  const std::size_t N = lambda_grid.size();
  HeatTimeResult r;
  r.value = deterministic_sum<double>(N, [&](std::size_t i) {
              return integrand(lambda_grid.coord(0, static_cast<int>(i))) * lambda_grid.weight(i);
            }) / (2.0 * std::numbers::pi);
  double peak = 0.0;
  for (std::size_t i = 0; i < N; ++i) peak = std::max(peak, env(lambda_grid.coord(0, static_cast<int>(i))));
  r.tail = std::max(env(lambda_grid.coord(0, 0)), env(lambda_grid.coord(0, static_cast<int>(N) - 1))) / peak;
  r.tail_ok = r.tail < 1e-12;
  if (!r.tail_ok) r.warning = "lambda grid truncates the integrand at " + std::to_string(r.tail);
  return r;
}

}  // namespace heis
