#include "heis/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "heis/bergman.hpp"
#include "heis/io.hpp"
#include "heis/parallel.hpp"
#include "heis/twisted.hpp"
#include "heis/uncertainty.hpp"
#include "heis/weyl.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;

// Shortest decimal form that reads back to the same double.
std::string num(double v) {
  for (int prec = 6;; ++prec) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    if (prec == 17 || std::stod(s.str()) == v) return s.str();
  }
}

std::string lam_tag(double l) { return "lambda=" + num(l); }

struct Ctx {
  const SuiteConfig& cfg;
  CheckReport& rep;

  double tol(const std::string& name, double def) const {
    if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
    if (cfg.tol) return *cfg.tol;
    return def;
  }
  void eq(const std::string& name, const std::string& anchor, double lhs, double rhs, double def,
          std::string notes = {}) {
    rep.add(check_equal(name, anchor, lhs, rhs, tol(name, def), std::move(notes)));
  }
  void le(const std::string& name, const std::string& anchor, double lhs, double rhs, double def,
          std::string notes = {}) {
    auto it = cfg.tolerances.find(name);
    rep.add(check_le(name, anchor, lhs, rhs, it != cfg.tolerances.end() ? it->second : def,
                     std::move(notes)));
  }
  void truth(const std::string& name, const std::string& anchor, bool holds, std::string notes = {}) {
    rep.add(check_true(name, anchor, holds, std::move(notes)));
  }
  // Runs body; an exception becomes a failed check instead of aborting the suite.
  void guarded(const std::string& name, const std::string& anchor, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.add(check_true(name, anchor, false, std::string("exception: ") + e.what()));
    }
  }
  double extent(double lambda, double def) const {
    return cfg.extent > 0.0 ? cfg.extent : def / std::sqrt(std::min(std::abs(lambda), 1.0));
  }
  int points(int def) const { return cfg.grid_points > 0 ? cfg.grid_points : def; }
};

using Fn2 = std::function<Complex(std::span<const double>)>;

double sup_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

Fn2 gaussian(double x0, double u0, double sx, double su, double freq, double tilt) {
  return [=](std::span<const double> p) {
    const double dx = p[0] - x0, du = p[1] - u0;
    return std::exp(-0.5 * (dx * dx / sx + du * du / su)) * Complex(1.0, tilt * p[1]) *
           std::polar(1.0, freq * p[0]);
  };
}

// ---------------------------------------------------------------- plancherel

void suite_plancherel(Ctx& c) {
  const std::string anchor = "Weyl-Plancherel";
  const std::vector<std::pair<std::string, Fn2>> inputs = {
      {"centred", gaussian(0, 0, 1, 1, 0, 0)},
      {"shifted", gaussian(0.7, -0.4, 1, 1, 0.5, 0)},
      {"anisotropic", gaussian(0, 0, 1.5, 0.8, 0, 0.3)}};
  for (double lambda : c.cfg.lambdas) {
    const Grid grid(2, c.extent(lambda, 8.0), c.points(129));
    const BasisSpec basis(1, lambda, c.cfg.basis_size);
    const double scale = std::abs(lambda) / (2.0 * kPi);
    for (const auto& [label, fn] : inputs) {
      const auto g = sample(grid, fn, 1, lambda);
      const auto T = weyl_transform(g, basis);
      const std::string tag = "/" + lam_tag(lambda) + "/" + label;
      c.eq("plancherel" + tag, anchor, scale * T.entries().squaredNorm(), g.l2_norm_sq(), 1e-5);
      if (label == "centred") {
        const double hs = schatten_norm(T, Schatten::Two);
        c.eq("schatten-2-is-frobenius" + tag, anchor, hs * hs, T.entries().squaredNorm(), 1e-10);
        c.eq("trace-is-value-at-origin" + tag, anchor, trace(T).real(),
             std::pow(2.0 * kPi / std::abs(lambda), 1) * 1.0, 1e-6);
        const auto back = weyl_inverse(T, grid);
        c.eq("inversion-sup-error" + tag, "Eq. (weyl-inv)", sup_diff(back, g), 0.0, 1e-4);
      }
    }
  }
}

// ---------------------------------------------------------------- semigroup

void suite_semigroup(Ctx& c) {
  const int n = c.cfg.n;
  const std::string anchor = "heat kernel generating function";
  // series against closed form on a 2n-dimensional sample box
  for (double a : {0.5, 1.0})
    for (double lambda : {0.5, 1.0, 2.0}) {
      const KernelParams p(a, lambda, n);
      const Grid box(2 * n, 2.5, n == 1 ? 21 : 9);
      double worst = 0.0;
      std::vector<Complex> zw(2 * n);
      for (std::size_t i = 0; i < box.size(); ++i) {
        const auto x = box.point(i);
        for (int j = 0; j < 2 * n; ++j) zw[j] = x[j];
        const Complex s = heat_kernel_series(p, zw, 60);
        const double cf = heat_kernel(p, x);
        worst = std::max(worst, std::abs(s - cf) / cf);
      }
      c.eq("heat-series/a=" + num(a) + "/" + lam_tag(lambda), anchor, worst, 0.0, 1e-10,
           "max relative error, 60 terms");
    }
  if (n != 1) return;
  const int K = std::min(c.cfg.basis_size, 32);
  for (double lambda : c.cfg.lambdas) {
    const Grid grid(2, c.extent(lambda, 8.0), c.points(129));
    const BasisSpec basis(1, lambda, K);
    for (double b : {0.5, 1.0}) {
      const KernelParams p(b, lambda, 1);
      const auto pb = sample(grid, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
      const auto T = weyl_transform(pb, basis);
      const double err = (T.entries() - hermite_semigroup(b, basis).entries()).cwiseAbs().maxCoeff();
      c.eq("transform-of-heat-kernel/b=" + num(b) + "/" + lam_tag(lambda), "heat semigroup transform",
           err, 0.0, 1e-5, "max entrywise error against e^{-bH}, K=" + std::to_string(K));
    }
    // p_a ∗ p_b = p_{a+b} on an odd grid
    const Grid cg(2, c.extent(lambda, 8.0), 97);
    const KernelParams pa(0.5, lambda, 1), pb(0.3, lambda, 1), pab(0.8, lambda, 1);
    auto heat = [&](const KernelParams& p) {
      return sample(cg, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
    };
    const auto conv = twisted_conv(heat(pa), heat(pb), lambda);
    const auto ref = heat(pab);
    c.eq("semigroup-by-twisted-convolution/" + lam_tag(lambda), "heat semigroup",
         sup_diff(conv, ref) / ref.sup_norm(), 0.0, 1e-6);
  }
}

// ---------------------------------------------------------------- kernels

void suite_kernels(Ctx& c) {
  for (double lambda : c.cfg.lambdas) {
    const std::string tag = "/" + lam_tag(lambda);
    const Grid grid(2, c.extent(lambda, 12.0), 97);
    const auto f = sample(grid, gaussian(0.5, -0.3, 1.0, 1.2, 0.4, 0.0), 1, lambda);
    const auto g = sample(grid, gaussian(-0.2, 0.6, 0.8, 1.0, 0.0, 0.5), 1, lambda);
    const BasisSpec basis(1, lambda, 32);
    const auto fg = twisted_conv(f, g, lambda);
    const auto lhs = weyl_transform(fg, basis).entries();
    const auto rhs = (weyl_transform(f, basis) * weyl_transform(g, basis)).entries();
    c.eq("homomorphism" + tag, "twisted convolution homomorphism", (lhs - rhs).norm() / rhs.norm(), 0.0,
         1e-4, "relative Frobenius error");
    const double factor = std::pow(2.0 * kPi / std::abs(lambda), 1);
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k) {
        const auto pj = laguerre_fn_grid(j, 1, lambda, grid);
        const auto pk = laguerre_fn_grid(k, 1, lambda, grid);
        const auto prod = twisted_conv(pj, pk, lambda);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
          err = std::max(err, std::abs(prod.values[i] - (j == k ? factor : 0.0) * pk.values[i]));
        c.eq("laguerre-orthogonality/j=" + std::to_string(j) + "/k=" + std::to_string(k) + tag,
             "Laguerre function relation", err / pk.sup_norm(), 0.0, 1e-4);
      }
    for (int k = 0; k <= 3; ++k) {
      const auto direct = spectral_projection(f, k, lambda);
      const auto viaw = spectral_projection_weyl(f, k, BasisSpec(1, lambda, 40));
      c.eq("spectral-projection/k=" + std::to_string(k) + tag, "special Hermite expansion",
           sup_diff(direct, viaw) / std::max(direct.sup_norm(), 1e-300), 0.0, 1e-4);
    }
    // twisted Laplacian eigenfunctions
    const Grid fine(2, c.extent(lambda, 8.0), 201);
    for (int k = 0; k <= 2; ++k) {
      const auto phi = laguerre_fn_grid(k, 1, lambda, fine);
      const auto L = twisted_laplacian(phi, lambda);
      const double ev = (2.0 * k + 1) * std::abs(lambda);
      double err = 0.0;
      for (std::size_t i = 0; i < fine.size(); ++i) {
        const int ix = static_cast<int>(i / 201), iu = static_cast<int>(i % 201);
        if (ix < 2 || iu < 2 || ix > 198 || iu > 198) continue;
        err = std::max(err, std::abs(L.values[i] - ev * phi.values[i]));
      }
      c.eq("twisted-laplacian-eigen/k=" + std::to_string(k) + tag, "special Hermite operator",
           err / phi.sup_norm(), 0.0, 1e-4, "fourth-order differences, h=" + num(fine.spacing(0)));
    }
    // reproducing kernel of the heat transform
    const double a = 0.5;
    const std::vector<std::vector<Complex>> pts = {
        {Complex(0.3, 0.2), Complex(-0.5, 0.1)},
        {Complex(-1.0, -0.3), Complex(0.4, 0.25)},
        {Complex(0.8, 0.1), Complex(0.9, -0.2)}};
    double herm = 0.0, diag = 0.0, quad = 0.0;
    const Grid qg(2, c.extent(lambda, 8.0), 129);
    const KernelParams pa(a, lambda, 1);
    EntireFn q = [&](std::span<const Complex> z) { return heat_kernel(pa, z); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& P = pts[i];
      const auto& Q = pts[(i + 1) % pts.size()];
      const Complex kpq = reproducing_kernel_heat(a, lambda, 1, P, Q);
      const Complex kqp = reproducing_kernel_heat(a, lambda, 1, Q, P);
      herm = std::max(herm, std::abs(kpq - std::conj(kqp)) / std::abs(kpq));
      const double y = P[0].imag(), v = P[1].imag(), x = P[0].real(), u = P[1].real();
      const Complex kpp = reproducing_kernel_heat(a, lambda, 1, P, P);
      const double imag_pt[2] = {0, 0};
      (void)imag_pt;
      const std::vector<Complex> twoiy = {Complex(0, 2 * y), Complex(0, 2 * v)};
      const Complex expect = std::exp(-lambda * (u * y - v * x)) * heat_kernel(KernelParams(2 * a, lambda, 1), twoiy);
      diag = std::max(diag, std::abs(kpp - expect) / std::abs(expect));
      const Complex kq = reproducing_kernel(q, lambda, qg, P, Q);
      quad = std::max(quad, std::abs(kq - kpq) / std::abs(kpq));
    }
    c.eq("reproducing-kernel-hermitian" + tag, "reproducing kernel", herm, 0.0, 1e-10);
    c.eq("reproducing-kernel-diagonal" + tag, "reproducing kernel", diag, 0.0, 1e-8,
         "diagonal carries the phase e^{-lambda(u.y - v.x)}");
    c.eq("reproducing-kernel-semigroup" + tag, "reproducing kernel", quad, 0.0, 1e-8,
         "quadrature of q*q against the closed form p_{2a}");
  }
}

// ---------------------------------------------------------------- gutzmer

void suite_gutzmer(Ctx& c) {
  const std::string anchor = "Theorem Gutz";
  const double lambda = c.cfg.lambdas.front();
  const double t = 0.5;
  const KernelParams p(t, lambda, 1);
  EntireFn G = [&](std::span<const Complex> z) { return heat_kernel(p, z); };
  auto opts = default_gutzmer_options(1, lambda, c.cfg.seed);
  if (c.cfg.grid_points > 0 || c.cfg.extent > 0.0)
    opts.grid = Grid(2, c.extent(lambda, 8.0), c.points(129));
  const auto norms = heat_kernel_norms(t, lambda, 1, 80);
  // closed-form norms against the Weyl route
  {
    const auto g = sample(opts.grid, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
    const auto w = spectral_norms(weyl_transform(g, BasisSpec(1, lambda, c.cfg.basis_size)), 5);
    for (int k = 0; k <= 5; ++k)
      c.eq("norms-weyl-route/k=" + std::to_string(k), anchor, w.value(k), norms.value(k), 1e-5);
    const double zero[2] = {0.0, 0.0};
    const auto l0 = gutzmer_lhs(G, lambda, 1, zero, opts);
    c.eq("lhs-at-origin-is-l2-norm", anchor, l0.value, g.l2_norm_sq(), 1e-8);
    const double sum0 = gutzmer_rhs(norms, lambda, 1, zero, 1.0);
    const double cn = l0.value / sum0;
    c.rep.calibration.push_back({"gutzmer c_n", cn, gutzmer_constant(1, lambda),
                                 "heat slice p_t, t=0.5, (y,v)=(0,0)"});
    c.eq("calibrated-constant-vs-analytic", anchor, cn, gutzmer_constant(1, lambda), 1e-6);
    const double dir[2] = {std::cos(0.3), std::sin(0.3)};
    double prev = l0.value;
    bool monotone = true;
    std::string notes;
    for (double r : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double yv[2] = {r * dir[0], r * dir[1]};
      const auto L = gutzmer_lhs(G, lambda, 1, yv, opts);
      const double R = gutzmer_rhs(norms, lambda, 1, yv, cn);
      c.eq("identity/r=" + num(r), anchor, L.value, R, 1e-3, L.notes);
      monotone = monotone && L.value >= prev;
      prev = L.value;
      if (!L.notes.empty()) notes += L.notes;
    }
    c.truth("lhs-monotone-along-ray", anchor, monotone, notes);
    // radial RHS
    double spread = 0.0;
    const double r = 0.7;
    const double base[2] = {r, 0.0};
    const double ref = gutzmer_rhs(norms, lambda, 1, base, cn);
    for (int j = 1; j < 8; ++j) {
      const double th = 2.0 * kPi * j / 8;
      const double yv[2] = {r * std::cos(th), r * std::sin(th)};
      spread = std::max(spread, std::abs(gutzmer_rhs(norms, lambda, 1, yv, cn) - ref) / ref);
    }
    c.eq("rhs-radial", anchor, spread, 0.0, 1e-10);
  }
}

// ---------------------------------------------------------------- orbital

void suite_orbital(Ctx& c) {
  const std::string anchor = "Proposition conseq-1";
  const double lambda = c.cfg.lambdas.front();
  const double t = 0.5;
  const BasisSpec basis(1, lambda, c.cfg.basis_size);
  const KernelParams p(t, lambda, 1);
  const Grid grid(2, c.extent(lambda, 8.0), c.points(129));
  const auto f = sample(grid, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
  const auto fhat = weyl_transform(f, basis);
  const auto norms = spectral_norms(fhat, basis.K());
  const auto rule = unitary_rule(1, 64, c.cfg.seed);
  const std::vector<Complex> real_pt = {Complex(0.3, 0.0), Complex(-0.2, 0.0)};
  const auto cal = orbital_hs_identity(fhat, real_pt, rule, norms, 1.0);
  const double cst = cal.lhs / cal.rhs;
  c.rep.calibration.push_back({"orbital constant", cst, orbital_constant(1, lambda),
                               "heat slice p_t, t=0.5, real point (0.3,-0.2)"});
  c.eq("calibrated-constant-vs-analytic", anchor, cst, orbital_constant(1, lambda), 1e-6);
  c.eq("real-point-unitarity", anchor, cal.lhs, fhat.entries().squaredNorm(), 1e-4,
       "LHS at a real point equals ||fhat||_HS^2");
  const double y = 0.5, v = 0.3;
  const std::vector<std::pair<double, double>> offsets = {{0, 0}, {0.5, -0.3}, {-0.7, 0.2}, {1, 1}, {-0.4, -0.9}};
  double ref = 0.0;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const auto [x, u] = offsets[i];
    const std::vector<Complex> zw = {Complex(x, y), Complex(u, v)};
    const auto o = orbital_hs_identity(fhat, zw, rule, norms, cst);
    const std::string tag = "/x=" + num(x) + "/u=" + num(u);
    c.eq("identity" + tag, anchor, o.lhs, o.rhs, 1e-3);
    const double normalised = std::exp(lambda * (u * y - v * x)) * o.lhs;
    if (i == 0) ref = normalised;
    else c.eq("independence-of-real-part" + tag, anchor, normalised, ref, 1e-3);
  }
}

// ---------------------------------------------------------------- isometry

void suite_isometry(Ctx& c) {
  const std::string anchor = "Theorem twist-berg";
  const double lambda = c.cfg.lambdas.front();
  const double a = 0.25;
  const Grid grid(2, c.extent(lambda, 8.0), c.points(97));
  IsometryOptions opts;
  opts.K = c.cfg.basis_size;
  opts.kmax = std::min(40, opts.K);
  opts.tube.imag_extent = std::min(5.0, 5.0 / std::sqrt(std::abs(lambda)));
  const auto g0 = sample(grid, gaussian(0, 0, 1, 1, 0, 0), 1, lambda);
  const auto ref = bergman_isometry(g0, a, lambda, IsometryMode::Series, 1.0, opts);
  const double cl = ref.lhs / ref.norm_sq;
  const double analytic = std::pow(4.0, -1);
  c.rep.calibration.push_back({"isometry c_lambda", cl, analytic, "centred Gaussian, series mode, a=0.25"});
  c.eq("calibrated-constant-vs-analytic", anchor, cl, analytic, 1e-6);
  const std::vector<std::pair<std::string, Fn2>> inputs = {
      {"shifted", gaussian(0.8, -0.5, 1, 1, 0, 0)},
      {"twisted-translate", [&](std::span<const double> x) {
         const double x0 = -0.6, u0 = 0.9;
         return std::exp(-0.5 * ((x[0] - x0) * (x[0] - x0) + (x[1] - u0) * (x[1] - u0))) *
                std::polar(1.0, 0.5 * lambda * (x[1] * x0 - u0 * x[0]));
       }},
      {"phi0+phi1", [&](std::span<const double> x) {
         const double rho2 = x[0] * x[0] + x[1] * x[1];
         return Complex(laguerre_fn_phi_radial(0, 1, lambda, rho2) + 0.5 * laguerre_fn_phi_radial(1, 1, lambda, rho2));
       }},
      {"anisotropic", gaussian(0.2, 0.1, 1.4, 0.7, 0.3, 0.2)},
      {"phi2-shifted", [&](std::span<const double> x) {
         const double rho2 = (x[0] - 0.3) * (x[0] - 0.3) + x[1] * x[1];
         return Complex(laguerre_fn_phi_radial(2, 1, lambda, rho2), 0.1 * x[1] * std::exp(-rho2 / 2));
       }}};
  for (const auto& [label, fn] : inputs) {
    const auto g = sample(grid, fn, 1, lambda);
    const auto s = bergman_isometry(g, a, lambda, IsometryMode::Series, cl, opts);
    c.eq("series-ratio/" + label, anchor, s.lhs / s.norm_sq, cl, 1e-4);
  }
  const auto g2 = sample(grid, gaussian(0, 0, 1, 1, 0, 0), 1, lambda);
  SampledFunction twice = g2;
  for (auto& v : twice.values) v *= 2.0;
  const auto s2 = bergman_isometry(twice, a, lambda, IsometryMode::Series, cl, opts);
  c.eq("quadratic-scaling", anchor, s2.lhs, 4.0 * ref.lhs, 1e-12);
  for (const std::string label : {"centred", "shifted"}) {
    const auto g = label == "centred" ? g0 : sample(grid, inputs[0].second, 1, lambda);
    const auto s = bergman_isometry(g, a, lambda, IsometryMode::Series, cl, opts);
    const auto d = bergman_isometry(g, a, lambda, IsometryMode::Direct4D, cl, opts);
    c.eq("direct-vs-series/" + label, anchor, d.lhs, s.lhs, 2e-2,
         "tube grid " + std::to_string(opts.tube.real_points) + "^2 x " + std::to_string(opts.tube.imag_points) + "^2");
  }
  // pointwise bound and reproducing property on the tube samples
  const auto T = segal_bargmann_tube(g0, a, lambda, opts.tube);
  const KernelParams p2a(2 * a, lambda, 1);
  double worst = 0.0;
  for (std::size_t iy = 0; iy < T.ys.size(); iy += 2)
    for (std::size_t iv = 0; iv < T.vs.size(); iv += 2)
      for (std::size_t ix = 0; ix < T.xs.size(); ix += 4)
        for (std::size_t iu = 0; iu < T.us.size(); iu += 4) {
          const double x = T.xs[ix], u = T.us[iu], y = T.ys[iy], v = T.vs[iv];
          const std::vector<Complex> twoiy = {Complex(0, 2 * y), Complex(0, 2 * v)};
          const double bound = ref.norm_sq * std::exp(-lambda * (u * y - v * x)) *
                               heat_kernel(p2a, twoiy).real();
          worst = std::max(worst, std::norm(T.at(ix, iy, iu, iv)) / bound);
        }
  c.le("pointwise-bound", "Segal-Bargmann pointwise estimate", worst, 1.0, 1e-9,
       "max of |F|^2 / (||g||^2 e^{-lambda(u.y-v.x)} p_2a(2iy,2iv)) over the tube");
  const std::vector<std::vector<Complex>> pts = {
      {Complex(0.3, 0.2), Complex(-0.4, 0.1)}, {Complex(-0.8, -0.3), Complex(0.5, 0.4)}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex rp = reproduce_at(T, a, lambda, pts[i]);
    const Complex F = segal_bargmann(g0, a, lambda, pts[i]);
    c.eq("reproducing-property/" + std::to_string(i), "reproducing kernel", std::abs(rp - cl * F), 0.0,
         2e-2 * std::abs(cl * F), "absolute error against 2e-2 |c_lambda F(P)|");
  }
}

// ---------------------------------------------------------------- weights

void suite_weights(Ctx& c) {
  const std::string anchor = "weight sequence C_lambda(k)";
  const int n = c.cfg.n;
  const double lambda = c.cfg.lambdas.front();
  const double l = std::abs(lambda);
  const double t = 0.5;
  const auto C = weight_to_coefficients(heat_weight(t, lambda, n), 10);
  const double analytic = std::pow(4.0, -n);
  for (int k = 0; k <= 10; ++k)
    c.eq("heat-weight/k=" + std::to_string(k), anchor, C.value(k) / std::exp(2 * t * (2 * k + n) * l),
         analytic, 1e-6, "C(k) e^{-2t(2k+n)|lambda|} against 4^{-n}");
  // heat kernel at real arguments against φ_k(iy,iv), via the (2y,2v) substitution
  {
    RadialWeight w = heat_weight(0.5 * t, lambda, n);
    const double scale = std::pow(4.0, n);
    auto r0 = w.radial, g0 = w.radial_growth;
    w.radial = [=](double r) { return scale * r0(r); };
    w.radial_growth = [=](double r) { return scale * g0(r); };
    const auto D = weight_to_coefficients(w, 10);
    const double cn = D.value(0) / std::exp(t * n * l);
    c.rep.calibration.push_back({"heat pairing c_n", cn, 1.0, "p_t against phi_k(iy,iv), k=0"});
    for (int k = 1; k <= 10; ++k)
      c.eq("heat-pairing/k=" + std::to_string(k), anchor, D.value(k), cn * std::exp(t * (2 * k + n) * l), 1e-5);
  }
  // monotonicity on nested weights
  {
    const auto w1 = heat_weight(t, lambda, n), w2 = heat_weight(0.8, lambda, n);
    RadialWeight sum = w1;
    sum.radial = [=](double r) { return w1.radial(r) + w2.radial(r); };
    sum.radial_growth = [=](double r) { return w1.radial_growth(r) + w2.radial_growth(r); };
    const auto A = weight_to_coefficients(w1, 10), B = weight_to_coefficients(sum, 10);
    bool mono = true;
    for (int k = 0; k <= 10; ++k) mono = mono && B.value(k) >= A.value(k);
    c.truth("monotone-in-weight", anchor, mono);
    RadialWeight zero = w1;
    zero.radial = zero.radial_growth = [](double) { return 0.0; };
    const auto Z = weight_to_coefficients(zero, 5);
    bool allzero = true;
    for (int k = 0; k <= 5; ++k) allzero = allzero && Z.value(k) == 0.0;
    c.truth("zero-weight", anchor, allzero);
  }
  // kernel from the heat weight is the heat kernel
  {
    const auto C60 = weight_to_coefficients(heat_weight(t, lambda, n), 80);
    const KernelParams pt(t, lambda, n);
    double worst = 0.0;
    for (double x : {0.0, 0.5, 1.3}) {
      std::vector<Complex> zw(2 * n, 0.0);
      zw[0] = x;
      zw[2 * n - 1] = -0.4 * x + 0.2;
      std::vector<double> xr(2 * n);
      for (int j = 0; j < 2 * n; ++j) xr[j] = zw[j].real();
      // 4^{-n} in C(k) turns q into 2^n p_t
      const Complex q = kernel_from_weight(C60, lambda, n, zw, 80);
      const double ref = std::pow(2.0, n) * heat_kernel(pt, xr);
      worst = std::max(worst, std::abs(q - ref) / ref);
    }
    c.eq("kernel-from-heat-weight", "kernel from weight", worst, 0.0, 1e-8,
         "q = 2^n p_t because C(k) carries 4^{-n}");
    const std::vector<Complex> origin(2 * n, 0.0);
    double direct = 0.0;
    for (int k = 0; k <= 80; ++k)
      direct += std::exp(-0.5 * C60.log_values[k]) * laguerre_dimension(k, n);
    direct *= std::pow(l / (2 * kPi), n);
    c.eq("kernel-at-origin", "kernel from weight", kernel_from_weight(C60, lambda, n, origin, 80).real(),
         direct, 1e-12);
  }
  // superposition weights, s = 2
  const double s = 2.0, sp = s / (s - 1.0);
  const auto S = superposition_coefficients(s, lambda, n, 40);
  {
    const auto w = superposition_weight_fn(s, lambda, n);
    bool positive = true;
    for (int i = 0; i <= 40; ++i) positive = positive && w.radial(0.25 * i) > 0.0;
    c.truth("superposition-weight-positive", anchor, positive);
    PolarOptions po;
    po.log_radius = true;
    po.r_max = std::exp(18.0);
    const auto P = weight_to_coefficients(w, 3, po);
    for (int k = 0; k <= 3; ++k)
      c.eq("superposition-polar-vs-fubini/k=" + std::to_string(k), anchor, P.value(k), S.value(k), 1e-8);
  }
  double fitted = std::numeric_limits<double>::infinity();
  double saddle_min = std::numeric_limits<double>::infinity();
  // ψ(t0) = 1/(2s′) on (0,1)
  auto psi = [&](double x) { return std::pow(x, s) / s + 1.0 / sp - x; };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) > 0.5 / sp ? lo : hi) = mid;
  }
  const double t0 = 0.5 * (lo + hi);
  const double csaddle = (1.0 - std::pow(t0, n + 1)) / (n + 1);
  for (int k = 2; k <= 20; ++k) {
    const double A = (2.0 * k + n) * l;
    const double log_printed = (n + 1) * (sp - s) * std::log(A) + std::pow(A, sp) / (2 * sp);
    fitted = std::min(fitted, std::exp(S.log_values[k] - log_printed));
    const double log_derived = std::log(std::pow(4.0, -n) * csaddle) + (n + 1) * sp / s * std::log(A) +
                               std::pow(A, sp) / (2 * sp);
    saddle_min = std::min(saddle_min, std::exp(S.log_values[k] - log_derived));
  }
  c.rep.calibration.push_back({"superposition lower-bound c", fitted, std::numeric_limits<double>::quiet_NaN(),
                               "min over k in [2,20] of C(k) / (A^{(n+1)(s'-s)} e^{A^{s'}/(2s')}), s=2"});
  c.truth("superposition-lower-bound-fitted", anchor, fitted > 0.0 && std::isfinite(fitted),
          "fitted c = " + num(fitted));
  c.le("superposition-lower-bound-saddle-constant", anchor, 1.0, saddle_min, 0.0,
       "C(k) / (4^{-n} c_saddle A^{(n+1)s'/s} e^{A^{s'}/(2s')}) >= 1 for k in [2,20]");
  for (double A : {2.0, 4.0, 8.0}) {
    const double As = std::pow(A, sp);
    const double I = integrate_panels(
        [&](double x) { return std::pow(x, n) * std::exp(-As * psi(x)); }, 0.0, 4.0, 400, 20);
    c.le("saddle-substitution/A=" + num(A), anchor, csaddle * std::exp(-As / (2 * sp)), I, 0.0);
  }
  {
    double worst = 0.0;
    for (double x : {0.0, 0.7, 1.5}) {
      std::vector<Complex> zw(2 * n, 0.0);
      zw[0] = Complex(x, 0.2);
      zw[1] = Complex(-0.3, 0.1 * x);
      const Complex q20 = kernel_from_weight(S, lambda, n, zw, 20);
      const Complex q40 = kernel_from_weight(S, lambda, n, zw, 40);
      worst = std::max(worst, std::abs(q20 - q40) / std::abs(q40));
    }
    c.eq("superposition-kernel-doubling", "kernel from weight", worst, 0.0, 1e-10);
  }
}

// ---------------------------------------------------------------- strip

void suite_strip(Ctx& c) {
  const std::string anchor = "Hedenmalm strip function";
  const int n = c.cfg.n;
  const double s = 2.0;
  EntireFn f = [&](std::span<const Complex> z) { return std::exp(-0.5 * s * bilinear_square(z)); };
  auto closed = [&](Complex zeta) {
    return std::pow(2.0 * kPi, 0.5 * n) * std::pow(2.0 * kPi / (s * (1.0 + zeta * zeta)), 0.5 * n);
  };
  double worst = 0.0;
  for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto F = hedenmalm_F(f, n, z);
    worst = std::max(worst, std::abs(F.value - closed(z)) / std::abs(closed(z)));
  }
  c.eq("gaussian-closed-form", anchor, worst, 0.0, 1e-10);
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const auto a = hedenmalm_F(f, n, r), b = hedenmalm_F(f, n, 1.0 / r);
    const Complex rhs = std::pow(r, -n) * std::conj(b.value);
    c.eq("functional-equation/r=" + num(r), anchor, std::abs(a.value - rhs), 0.0, 1e-10);
  }
  std::vector<double> gs;
  for (int i = 0; i <= 8; ++i) {
    const double z = 0.2 + (5.0 - 0.2) * i / 8;
    gs.push_back(std::abs(hedenmalm_G(hedenmalm_F(f, n, z).value, n, z)));
  }
  double mean = 0.0, var = 0.0;
  for (double g : gs) mean += g / gs.size();
  for (double g : gs) var += (g - mean) * (g - mean) / gs.size();
  c.eq("G-constancy", anchor, var / (mean * mean), 0.0, 1e-10, "relative variance over [0.2, 5]");
  const double norm_sq = std::pow(kPi / s, 0.5 * n);
  const auto F1 = hedenmalm_F(f, n, 1.0);
  c.eq("value-at-one", anchor, F1.value.real(), std::pow(2.0 * kPi, 0.5 * n) * norm_sq, 1e-10,
       "F(1) = (2pi)^{n/2} ||f||^2 with the explicit prefactor");
  c.rep.calibration.push_back({"F(1) / ||f||^2", F1.value.real() / norm_sq, std::pow(2.0 * kPi, 0.5 * n),
                               "convention without the prefactor gives 1"});
  for (double side : {1.0, -1.0}) {
    double prev = 0.0;
    bool increasing = true;
    std::string notes;
    for (double eps : {0.1, 0.05, 0.01}) {
      const double v = std::abs(hedenmalm_F(f, n, Complex(0.0, side * (1.0 - eps))).value);
      increasing = increasing && v > prev;
      prev = v;
      notes += "eps=" + num(eps) + ": " + num(v) + "; ";
    }
    c.truth(side > 0 ? "blow-up-toward-i" : "blow-up-toward-minus-i", anchor, increasing, notes);
  }
  StripOptions quick;
  quick.budget = 200000;
  c.truth("divergence-reported-at-i", anchor, !hedenmalm_F(f, n, Complex(0, 1), quick).converged);

  const std::string anchor2 = "F_lambda functional equation";
  for (double lambda : c.cfg.lambdas)
    for (double a : {0.5, 1.0}) {
      const KernelParams p(a, lambda, 1);
      EntireFn fl = [&](std::span<const Complex> z) { return heat_kernel(p, z); };
      const double pre = sinh_factor(a, lambda) / (4 * kPi), kap = coth_factor(a, lambda);
      const std::string tag = "/a=" + num(a) + "/" + lam_tag(lambda);
      for (double r : {0.5, 2.0}) {
        const auto A = F_lambda(fl, 1, lambda, r), B = F_lambda(fl, 1, lambda, 1.0 / r);
        const Complex rhs = std::pow(r, -2) * std::conj(B.value);
        c.eq("F_lambda-functional-equation/r=" + num(r) + tag, anchor2, std::abs(A.value - rhs) / std::abs(rhs),
             0.0, 1e-8);
        c.eq("F_lambda-closed-form/r=" + num(r) + tag, anchor2, A.value.real(),
             pre * pre * 4 * kPi / (kap * (1 + r * r)), 1e-8);
      }
      const auto one = F_lambda(fl, 1, lambda, 1.0);
      c.eq("F_lambda-at-one" + tag, anchor2, one.value.real(), pre * pre * 2 * kPi / kap, 1e-8,
           "||p_a||^2; imaginary part " + num(one.value.imag()));
    }
}

// ---------------------------------------------------------------- heisenberg-beurling

void write_profile(Ctx& c, const std::string& name, const FunctionalProfile& p) {
  c.rep.profiles.emplace_back(name, p);
}

void suite_heisenberg_beurling(Ctx& c) {
  const std::string anchor = "Eq. (mod-b-h)";
  const double lambda = c.cfg.lambdas.front();
  const double a = 1.0;
  const BasisSpec basis(1, lambda, c.cfg.basis_size);
  const KernelParams p(a, lambda, 1);
  const Grid grid(2, c.extent(lambda, 8.0), c.points(129));
  const auto fl = sample(grid, [&](std::span<const double> x) { return Complex(heat_kernel(p, x)); }, 1, lambda);
  const auto fhat = hermite_semigroup(a, basis);
  const double guard = kImagRadius / std::sqrt(std::abs(lambda));
  const double step = guard / 12;
  std::vector<double> radii;
  for (int i = 1; i <= 12; ++i) radii.push_back(step * i);
  c.guarded("heat-kernel-profile", anchor, [&] {
    const auto prof = heisenberg_beurling(fhat, fl, radii);
    write_profile(c, "heat-kernel", prof);
    c.truth("heat-kernel-profile-diverging", anchor, prof.verdict == Verdict::Diverging,
            "verdict " + to_string(prof.verdict));
    bool mono = true;
    for (std::size_t i = 1; i < prof.partials.size(); ++i) mono = mono && prof.partials[i] >= prof.partials[i - 1];
    c.truth("profile-non-decreasing", anchor, mono);
  });
  {
    const OperatorMatrix zero(basis, Eigen::MatrixXcd::Zero(basis.dim(), basis.dim()));
    const SampledFunction z(grid, std::vector<Complex>(grid.size(), 0.0), 1, lambda);
    const auto prof = heisenberg_beurling(zero, z, radii);
    write_profile(c, "zero", prof);
    c.truth("zero-profile-converged", anchor, prof.verdict == Verdict::Converged);
  }
  const TraceNormWeight W(fhat, guard, step / 8);
  bool radial_mono = true;
  for (int i = 1; i <= 48; ++i) radial_mono = radial_mono && W(guard * i / 48) >= W(guard * (i - 1) / 48) - 1e-10;
  c.truth("weight-radially-monotone", "Eq. (candi)", radial_mono);
  const double cl = std::pow(std::abs(lambda) / (2 * kPi), 1);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double r = 0.5 * guard * (i + 0.5) / 50, th = 0.7 * i;
    const double yv[2] = {r * std::cos(th), r * std::sin(th)};
    const Complex zeta(0.3 * std::sin(double(i)), std::cos(1.3 * i));
    const std::vector<Complex> pt = {zeta * yv[0], zeta * yv[1]};
    worst = std::max(worst, std::abs(heat_kernel(p, pt)) / (cl * W(r)));
  }
  c.rep.calibration.push_back({"majorant C_lambda (fitted)", worst * cl, cl,
                               "max |f(zeta y, zeta v)| / w(|(y,v)|) over 50 points, |Im zeta| <= 1"});
  c.le("majorant-consistency", "trace-norm majorant", worst, 1.0, 1e-9,
       "max |f(zeta y,zeta v)| / (c_lambda w) over 50 sampled points");
}

// ---------------------------------------------------------------- hermite-beurling

void suite_hermite_beurling(Ctx& c) {
  const std::string anchor = "Eq. (esti-proj)";
  const Grid grid(1, c.cfg.extent > 0 ? c.cfg.extent : 10.0, c.points(401));
  const double c0 = std::pow(kPi, -0.25);
  const auto phi0 = sample(grid, [&](std::span<const double> y) { return Complex(c0 * std::exp(-0.5 * y[0] * y[0])); }, 1);
  const auto f = sample(grid, [&](std::span<const double> y) {
    return Complex(std::exp(-0.5 * (y[0] - 0.7) * (y[0] - 0.7)) * (1 + 0.2 * y[0]), 0.1 * y[0] * std::exp(-0.5 * y[0] * y[0]));
  }, 1);
  {
    double e0 = 0.0, ek = 0.0;
    for (double x : {-1.0, 0.3, 1.7}) {
      const Complex z[1] = {x};
      e0 = std::max(e0, std::abs(hermite_projection(phi0, 0, z) - c0 * std::exp(-0.5 * x * x)));
      for (int k = 1; k <= 4; ++k) ek = std::max(ek, std::abs(hermite_projection(phi0, k, z)));
    }
    c.eq("projection-of-phi0/k=0", anchor, e0, 0.0, 1e-10);
    c.eq("projection-of-phi0/k>=1", anchor, ek, 0.0, 1e-10);
  }
  {
    const int k = 3;
    std::vector<Complex> pk(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex z[1] = {grid.coord(0, static_cast<int>(i))};
      pk[i] = hermite_projection(f, k, z);
    }
    const SampledFunction Pf(grid, pk, 1);
    double err = 0.0, scale = 0.0;
    for (double x : {-0.8, 0.4, 1.1}) {
      const Complex z[1] = {x};
      const Complex once = hermite_projection(f, k, z);
      err = std::max(err, std::abs(hermite_projection(Pf, k, z) - once));
      scale = std::max(scale, std::abs(once));
    }
    c.eq("idempotence/k=3", anchor, err / scale, 0.0, 1e-8);
  }
  {
    const auto norms = hermite_projection_norms(f, 12);
    double worst = 0.0, worst_kernel = 0.0;
    for (int k = 0; k <= 12; ++k)
      for (int i = 0; i < 20; ++i) {
        const Complex z[1] = {Complex(-3.0 + 6.0 * i / 19, 2.0 * std::sin(1.7 * i))};
        const double lhs = std::abs(hermite_projection(f, k, z));
        worst = std::max(worst, lhs / hermite_projection_bound(k, 1, norms[k], z));
        const Complex zc[1] = {std::conj(z[0])};
        const double kern = std::abs(hermite_projection_kernel(k, z, zc));
        worst_kernel = std::max(worst_kernel,
                                kern / (std::pow(kPi, -0.5) * phi_imag_radial(k, 1, 1.0, std::abs(z[0].imag()))));
      }
    c.le("projection-bound", anchor, worst, 1.0, 1e-9,
         "max |P_k f(z)| / (pi^{-1/4} ||P_k f|| sqrt(phi_k(2iy))), k <= 12, 20 points");
    c.le("projection-kernel-bound", anchor, worst_kernel, 1.0, 1e-9,
         "max Phi_k(z, conj z) / (pi^{-1/2} phi_k(2iy))");
  }
  const std::string anchor2 = "Eq. (cond-beur-her)";
  std::vector<double> radii;
  for (int i = 1; i <= 8; ++i) radii.push_back(i);
  {
    const auto prof = beurling_hermite(phi0, 12, radii);
    write_profile(c, "gaussian", prof);
    c.truth("gaussian-profile-diverging", anchor2, prof.verdict == Verdict::Diverging,
            "verdict " + to_string(prof.verdict));
    const double slope = (prof.partials[7] - prof.partials[3]) / 4.0;
    c.eq("gaussian-profile-slope", anchor2, slope, 2.0 * c0, 0.05, "slope per unit R against 2 pi^{-1/4}");
    SampledFunction two = phi0;
    for (auto& v : two.values) v *= 2.0;
    const auto p2 = beurling_hermite(two, 12, radii);
    c.truth("divergence-monotone-in-function", anchor2, p2.verdict == Verdict::Diverging);
    const SampledFunction zero(grid, std::vector<Complex>(grid.size(), 0.0), 1);
    const auto pz = beurling_hermite(zero, 12, radii);
    write_profile(c, "zero", pz);
    c.truth("zero-profile-converged", anchor2, pz.verdict == Verdict::Converged);
  }
  {
    const double b = 1.0, bp = 0.95;
    std::vector<double> norms(301);
    for (int k = 0; k <= 300; ++k) norms[k] = std::exp(-b * (2 * k + 1) / 2);
    std::vector<double> sr;
    for (int i = 1; i <= 16; ++i) sr.push_back(0.5 * i);
    for (double a : {3.0, 0.5}) {
      const auto prof = beurling_hermite_synthetic([&](double r) { return std::exp(-a * r * r / 2); }, norms, sr);
      write_profile(c, "synthetic-a=" + num(a), prof);
      const bool expect_conv = a * std::tanh(bp) > 1.0;
      c.truth("synthetic-verdict/a=" + num(a), "Theorem beur-her",
              prof.verdict == (expect_conv ? Verdict::Converged : Verdict::Diverging),
              "verdict " + to_string(prof.verdict) + ", a tanh b' = " + num(a * std::tanh(bp)));
    }
  }
}

// ---------------------------------------------------------------- hardy-window

void suite_hardy_window(Ctx& c) {
  const std::string anchor = "Theorem Hardy";
  const auto w = hardy_window(0.5, 1.0, 0.75);
  c.truth("window-certificate", anchor, w.certified && w.delta > 0.0, "delta = " + num(w.delta));
  c.eq("limit-at-zero", anchor, hardy_h(0.75, 1e-8), 1.0 / (2 * 0.75), 1e-12);
  bool rejected = false;
  try {
    hardy_window(1.0, 1.0, 1.0);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  c.truth("a-equals-b-rejected", anchor, rejected);
  const auto fin = hardy_beurling_integral(0.5, 0.75, 0.05, 1);
  c.truth("hardy-beurling-finite/lambda=0.05", anchor, fin.finite);
  c.eq("hardy-beurling-value/lambda=0.05", anchor, fin.value, fin.closed_form, 1e-10);
  c.truth("hardy-beurling-diverging/lambda=10", anchor, !hardy_beurling_integral(0.5, 0.75, 10.0, 1).finite);
  c.truth("hardy-beurling-diverging/a=inf", anchor,
          !hardy_beurling_integral(std::numeric_limits<double>::infinity(), 0.75, 0.05, 1).finite);
  const std::string anchor2 = "Hermite heat majorant";
  const int n = c.cfg.n;
  const std::vector<double> zero(n, 0.0);
  c.eq("majorant/b'=1/y=0", anchor2, hermite_heat_majorant(1.0, zero, 80).rel_err, 0.0, 1e-10);
  double worst = 0.0, env = 0.0;
  const double C0 = hermite_heat_majorant(0.5, zero, 200).series;
  for (int i = 0; i <= 16; ++i) {
    std::vector<double> y(n, 0.0);
    y[0] = -2.0 + 4.0 * i / 16;
    if (n > 1) y[1] = 0.5 * y[0];
    const auto m = hermite_heat_majorant(0.5, y, 400);
    worst = std::max(worst, m.rel_err);
    const double r2 = y[0] * y[0] + (n > 1 ? y[1] * y[1] : 0.0);
    env = std::max(env, m.series / (C0 * std::exp(r2 / std::tanh(0.5))));
  }
  c.eq("majorant/b'=0.5/grid", anchor2, worst, 0.0, 1e-8);
  c.le("growth-envelope", anchor2, env, 1.0, 1e-10, "series / (C e^{coth(b')|y|^2}) with C fitted at y=0");
}

// ---------------------------------------------------------------- cowling-price

void suite_cowling_price(Ctx& c) {
  const std::string anchor = "Theorem C-P";
  bool ok = true;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 20.0 * i / 2000;
    ok = ok && t * std::cosh(t) - std::sinh(t) >= 0.0;
  }
  c.truth("t-cosh-t-exceeds-sinh-t", anchor, ok);
  const int n = c.cfg.n;
  const auto A = cowling_price_bound(1.0, 40.0, n, 6.0, 61);
  const auto B = cowling_price_bound(1.0, 40.0, n, 6.0, 121);
  c.rep.calibration.push_back({"Cowling-Price C", A.C, A.analytic_C, "a=1, Lambda=40, 61 radial points"});
  c.eq("fitted-C-refinement", anchor, A.C, B.C, 0.05);
  c.eq("lambda-integral-doubling", anchor, A.lambda_integral_doubled, A.lambda_integral, 1e-10);
  c.le("fitted-C-below-analytic", anchor, A.C, A.analytic_C, 1e-10);
}

using SuiteFn = void (*)(Ctx&);

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {{"plancherel", "Weyl-Plancherel", "Plancherel identity and inversion of the Weyl transform",
        "lambda=0.5,1,2 K=48 R=8/sqrt(min(lambda,1)) N=129", {1}, {0.5, 1.0, 2.0}}, suite_plancherel},
      {{"semigroup", "heat semigroup", "heat kernel series, transform and semigroup law",
        "lambda=1 K=32 R=8 N=129", {1, 2}, {1.0}}, suite_semigroup},
      {{"gutzmer", "Theorem Gutz", "Gutzmer identity for a heat slice",
        "lambda=1 t=0.5 R=8 N=129 circle rule 64", {1}, {1.0}}, suite_gutzmer},
      {{"orbital", "Proposition conseq-1", "orbital Hilbert-Schmidt identity",
        "lambda=1 t=0.5 K=48 circle rule 64", {1}, {1.0}}, suite_orbital},
      {{"isometry", "Theorem twist-berg", "twisted Bergman isometry, series and direct 4-D",
        "lambda=1 a=0.25 K=48 R=8 N=97 tube 41^2 x 21^2", {1}, {1.0}}, suite_isometry},
      {{"weights", "weight sequence C_lambda(k)", "weight coefficients and kernels from weights",
        "lambda=1 t=0.5 s=2", {1, 2}, {1.0}}, suite_weights},
      {{"kernels", "twisted convolution homomorphism", "twisted convolution, Laguerre relations, reproducing kernel",
        "lambda=1 R=12 N=97", {1}, {1.0}}, suite_kernels},
      {{"strip", "Hedenmalm strip function", "strip functions F, G and F_lambda",
        "lambda=1 Gaussian s=2", {1, 2}, {1.0}}, suite_strip},
      {{"heisenberg-beurling", "Eq. (mod-b-h)", "Beurling functional with trace-norm weight",
        "lambda=1 a=1 K=48 R=8 N=129", {1}, {1.0}}, suite_heisenberg_beurling},
      {{"hermite-beurling", "Eq. (cond-beur-her)", "Hermite projection bound and Beurling-Hermite functional",
        "R=10 N=401", {1}, {1.0}}, suite_hermite_beurling},
      {{"hardy-window", "Theorem Hardy", "Hardy window, Hardy-Beurling integral, heat majorant",
        "a=0.5 b=1 b'=0.75", {1, 2}, {1.0}}, suite_hardy_window},
      {{"cowling-price", "Theorem C-P", "Cowling-Price constant fit",
        "a=1 Lambda=40", {1, 2}, {1.0}}, suite_cowling_price},
  };
  return r;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config: '" + key + "' expects a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw std::invalid_argument("config: '" + key + "' expects an integer");
  return static_cast<int>(d);
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> c = [] {
    std::vector<SuiteInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return c;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suite_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

std::string list_suites() {
  std::ostringstream os;
  for (const auto& s : suite_catalog()) {
    os << s.name << "\t" << s.anchor << "\t" << s.summary << "\tdefaults: " << s.defaults << "\tn:";
    for (int d : s.dimensions) os << ' ' << d;
    os << "\n";
  }
  return os.str();
}

void validate(const SuiteConfig& cfg) {
  const SuiteInfo* info = find_suite(cfg.suite);
  if (!info) throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  if (std::find(info->dimensions.begin(), info->dimensions.end(), cfg.n) == info->dimensions.end())
    throw std::invalid_argument("suite '" + cfg.suite + "' does not support n = " + std::to_string(cfg.n));
  for (double l : cfg.lambdas)
    if (l == 0.0 || !std::isfinite(l)) throw std::invalid_argument("lambda must be finite and nonzero");
  if (cfg.basis_size < 4 || cfg.basis_size > 200) throw std::invalid_argument("basis size must lie in [4, 200]");
  if (cfg.grid_points < 0 || (cfg.grid_points > 0 && (cfg.grid_points < 9 || cfg.grid_points % 2 == 0)))
    throw std::invalid_argument("grid points must be odd and at least 9");
  if (cfg.extent < 0.0) throw std::invalid_argument("extent must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  for (const auto& [k, v] : cfg.tolerances)
    if (!(v > 0.0)) throw std::invalid_argument("tolerance for '" + k + "' must be positive");
  if (cfg.threads < 0) throw std::invalid_argument("threads must be non-negative");
}

CheckReport run_suite(const SuiteConfig& user_cfg) {
  validate(user_cfg);
  SuiteConfig cfg = user_cfg;
  if (cfg.lambdas.empty()) cfg.lambdas = find_suite(cfg.suite)->lambdas;
  if (cfg.threads > 0) set_worker_count(cfg.threads);
  CheckReport rep;
  rep.suite = cfg.suite;
  std::string lams;
  for (double l : cfg.lambdas) lams += (lams.empty() ? "" : ",") + num(l);
  rep.parameters = {{"n", std::to_string(cfg.n)},
                    {"lambda", lams},
                    {"basis_size", std::to_string(cfg.basis_size)},
                    {"grid_points", cfg.grid_points ? std::to_string(cfg.grid_points) : "default"},
                    {"extent", cfg.extent > 0 ? num(cfg.extent) : "default"},
                    {"tol", cfg.tol ? num(*cfg.tol) : "default"},
                    {"seed", std::to_string(cfg.seed)}};
  for (const auto& [k, v] : cfg.tolerances) rep.parameters.emplace_back("tol." + k, num(v));
  Ctx ctx{cfg, rep};
  const auto start = std::chrono::steady_clock::now();
  for (const auto& e : registry())
    if (e.info.name == cfg.suite) {
      try {
        e.fn(ctx);
      } catch (const std::exception& ex) {
        rep.add(check_true("suite-completed", e.info.anchor, false, std::string("exception: ") + ex.what()));
      }
    }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void write_outputs(const CheckReport& report, const SuiteConfig& cfg) {
  if (!cfg.out.empty()) save_text(cfg.out, report.to_json());
  if (!cfg.csv_dir.empty() && !report.profiles.empty()) {
    std::filesystem::create_directories(cfg.csv_dir);
    for (const auto& [name, p] : report.profiles) {
      std::ostringstream os;
      write_profile_csv(os, p);
      save_text((std::filesystem::path(cfg.csv_dir) / (cfg.suite + "_" + name + ".csv")).string(), os.str());
    }
  }
}

void apply_config_text(SuiteConfig& cfg, const std::string& text) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  std::string current = "global";
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto cpos = line.find_first_of("#;");
    line = trim(cpos == std::string::npos ? line : line.substr(0, cpos));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad section");
      current = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.rfind('=');  // check names may contain '='
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    sections[current].emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const auto& [name, _] : sections)
    if (name != "global" && !find_suite(name))
      throw std::invalid_argument("config: section [" + name + "] names no suite");
  auto apply = [&](const std::string& key, const std::string& v) {
    if (key == "n") cfg.n = to_int(key, v);
    else if (key == "lambda") {
      cfg.lambdas.clear();
      std::istringstream ls(v);
      std::string item;
      while (std::getline(ls, item, ',')) cfg.lambdas.push_back(to_double(key, trim(item)));
    } else if (key == "basis-size") cfg.basis_size = to_int(key, v);
    else if (key == "grid-points") cfg.grid_points = to_int(key, v);
    else if (key == "extent") cfg.extent = to_double(key, v);
    else if (key == "tol") cfg.tol = to_double(key, v);
    else if (key.rfind("tol.", 0) == 0) cfg.tolerances[key.substr(4)] = to_double(key, v);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_double(key, v));
    else if (key == "out") cfg.out = v;
    else if (key == "csv-dir") cfg.csv_dir = v;
    else if (key == "threads") cfg.threads = to_int(key, v);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  };
  for (const auto& [k, v] : sections["global"]) apply(k, v);
  if (!cfg.suite.empty())
    for (const auto& [k, v] : sections[cfg.suite]) apply(k, v);
}

}  // namespace heis
