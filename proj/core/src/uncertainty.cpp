#include "heis/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heis/parallel.hpp"
#include "heis/twisted.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

void require_increasing(std::span<const double> radii) {
  if (radii.empty()) throw std::invalid_argument("profile: empty radius list");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw std::invalid_argument("profile: radii must be positive and increasing");
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverging: return "diverging";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> FunctionalProfile::increments() const {
  std::vector<double> d(partials.size());
  for (std::size_t i = 0; i < partials.size(); ++i)
    d[i] = i == 0 ? partials[0] : partials[i] - partials[i - 1];
  return d;
}

Verdict classify(std::span<const double> partials) {
  if (partials.empty()) return Verdict::Inconclusive;
  const double final = partials.back();
  const double last = partials.size() > 1 ? final - partials[partials.size() - 2] : final;
  if (last < kConvergedTol * (1.0 + std::abs(final))) return Verdict::Converged;
  if (partials.size() >= 4) {
    const std::size_t m = partials.size();
    const double d1 = partials[m - 3] - partials[m - 4];
    const double d2 = partials[m - 2] - partials[m - 3];
    const double d3 = partials[m - 1] - partials[m - 2];
    if (d2 > kDecayFactor * d1 && d3 > kDecayFactor * d2) return Verdict::Diverging;
  }
  return Verdict::Inconclusive;
}

FunctionalProfile accumulate_profile(std::span<const double> radii, std::size_t count,
                                     const std::function<double(std::size_t)>& radius,
                                     const std::function<double(std::size_t)>& term) {
  require_increasing(radii);
  const std::size_t m = radii.size();
  std::vector<double> shell(m, 0.0);
  // Shell index per point, then per-shell sums in a fixed order.
  std::vector<int> idx(count);
  parallel_for(count, [&](std::size_t i) {
    const double r = radius(i);
    auto it = std::lower_bound(radii.begin(), radii.end(), r);
    idx[i] = it == radii.end() ? -1 : static_cast<int>(it - radii.begin());
  });
  std::vector<double> vals(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    if (idx[i] >= 0) vals[i] = term(i);
  });
  for (std::size_t i = 0; i < count; ++i) {
    if (idx[i] < 0) continue;
    if (vals[i] < 0.0 || !std::isfinite(vals[i]))
      throw std::runtime_error("profile: integrand must be finite and non-negative");
    shell[idx[i]] += vals[i];
  }
  FunctionalProfile p;
  p.radii.assign(radii.begin(), radii.end());
  p.partials.resize(m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += shell[j];
    p.partials[j] = acc;
  }
  p.verdict = classify(p.partials);
  return p;
}

SampledFunction fourier_transform(const SampledFunction& f) {
  if (f.grid.dim() != 1) throw std::invalid_argument("fourier_transform: 1-D grids only");
  const std::size_t N = f.grid.size();
  const auto xs = f.grid.axis_coords(0);
  std::vector<Complex> out(N);
  const double c = 1.0 / std::sqrt(2.0 * kPi);
  parallel_for(N, [&](std::size_t j) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      s += f.values[i] * f.grid.weight(i) * std::polar(1.0, -xs[i] * xs[j]);
    out[j] = c * s;
  });
  return SampledFunction(f.grid, std::move(out), 1);
}

BeurlingProfiles beurling_euclidean(const SampledFunction& f, const SampledFunction& fhat,
                                    std::span<const double> radii) {
  if (f.grid.dim() != 1 || fhat.grid.dim() != 1)
    throw std::invalid_argument("beurling_euclidean: 1-D grids only");
  BeurlingProfiles out;
  const double a = f.l2_norm_sq(), b = fhat.l2_norm_sq();
  out.parseval_rel_err = std::abs(a - b) / std::max(a, std::numeric_limits<double>::min());
  if (a == 0.0 && b == 0.0) out.parseval_rel_err = 0.0;
  if (out.parseval_rel_err > 1e-6)
    throw std::invalid_argument("beurling_euclidean: fhat is not consistent with f (Parseval)");
  const std::size_t N = f.grid.size(), M = fhat.grid.size();
  const auto ys = f.grid.axis_coords(0), xis = fhat.grid.axis_coords(0);
  out.w0 = accumulate_profile(
      radii, N * M, [&](std::size_t i) { return std::hypot(ys[i / M], xis[i % M]); },
      [&](std::size_t i) {
        const std::size_t p = i / M, q = i % M;
        return std::abs(f.values[p]) * std::abs(fhat.values[q]) *
               std::exp(std::abs(ys[p] * xis[q])) * f.grid.weight(p) * fhat.grid.weight(q);
      });
  // u ↦ ∫|f̂|e^{-uξ} is convex, so the sup over |u| ≤ |y| sits at u = ±|y|.
  auto lap = [&](double u) {
    double s = 0.0;
    for (std::size_t q = 0; q < M; ++q)
      s += std::abs(fhat.values[q]) * std::exp(-u * xis[q]) * fhat.grid.weight(q);
    return s;
  };
  out.w1 = accumulate_profile(
      radii, N, [&](std::size_t p) { return std::abs(ys[p]); },
      [&](std::size_t p) {
        const double r = std::abs(ys[p]);
        return std::abs(f.values[p]) * std::max(lap(r), lap(-r)) * f.grid.weight(p);
      });
  return out;
}

namespace {

// Trapezoid sum of conj(f(y)) f(ζy) over [-R, R]^d with spacing h.
Complex strip_sum(const EntireFn& f, int d, Complex zeta, double R, double h, double scale) {
  const int m = static_cast<int>(std::ceil(R / h - 1e-9));
  const std::size_t side = 2 * m + 1;
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= side;
  return deterministic_sum<Complex>(total, [&](std::size_t flat) {
    std::vector<Complex> y(d), zy(d);
    std::size_t rest = flat;
    for (int j = d - 1; j >= 0; --j) {
      const double c = (static_cast<double>(rest % side) - m) * h;
      rest /= side;
      y[j] = c;
      zy[j] = zeta * c;
    }
    const Complex fy = f(y);
    const Complex fz = f(zy);
    // f(ζy) overflowing where f(y) has underflowed: the decay side wins
    // (the growth is slower than the decay inside the strip)
    const bool fz_finite = std::isfinite(fz.real()) && std::isfinite(fz.imag());
    if (!fz_finite && std::abs(fy) < 1e-290) return Complex(0.0);
    const Complex v = std::conj(fy) * fz;
    return std::isfinite(v.real()) && std::isfinite(v.imag()) ? v * std::pow(h, d) * scale
                                                               : Complex(kInf, 0.0);
  });
}

StripValue strip_integral(const EntireFn& f, int d, Complex zeta, double scale,
                          const StripOptions& opts) {
  if (std::abs(zeta.imag()) > 1.0)
    throw std::invalid_argument("strip point outside the closed strip |Im ζ| ≤ 1");
  auto points = [&](double R, double h) {
    return std::pow(2.0 * std::ceil(R / h) + 1.0, d);
  };
  StripValue out;
  double R = opts.extent, h = opts.step;
  Complex v = strip_sum(f, d, zeta, R, h, scale);
  while (true) {
    const bool can_r = points(2 * R, h) <= double(opts.budget);
    const bool can_h = points(R, h / 2) <= double(opts.budget);
    if (!can_r && !can_h) break;
    const Complex vr = can_r ? strip_sum(f, d, zeta, 2 * R, h, scale) : v;
    const Complex vh = can_h ? strip_sum(f, d, zeta, R, h / 2, scale) : v;
    const double er = can_r ? std::abs(vr - v) : kInf;
    const double eh = can_h ? std::abs(vh - v) : kInf;
    const double tol = opts.rel_tol * std::abs(v);
    if (std::isfinite(std::abs(v)) && er <= tol && eh <= tol) {
      out.converged = true;
      break;
    }
    if (er >= eh || !std::isfinite(eh)) {
      if (!can_r) break;
      R *= 2;
      v = vr;
    } else {
      h /= 2;
      v = vh;
    }
  }
  out.value = v;
  out.extent = R;
  out.step = h;
  if (!out.converged)
    out.notes = "strip integral did not stabilise within the point budget (divergent or slowly decaying)";
  return out;
}

}  // namespace

StripValue hedenmalm_F(const EntireFn& f, int n, Complex zeta, const StripOptions& opts) {
  if (n < 1) throw std::invalid_argument("hedenmalm_F: n must be positive");
  return strip_integral(f, n, zeta, std::pow(2.0 * kPi, 0.5 * n), opts);
}

Complex hedenmalm_G(Complex F, int n, Complex zeta) {
  return std::pow(std::sqrt(1.0 + zeta * zeta), n) * F;
}

StripValue F_lambda(const EntireFn& fl, int n, double lambda, Complex zeta,
                    const StripOptions& opts) {
  if (lambda == 0.0) throw std::invalid_argument("F_lambda: lambda must be nonzero");
  StripOptions o = opts;
  o.extent = opts.extent / std::sqrt(std::min(std::abs(lambda), 1.0));
  return strip_integral(fl, 2 * n, zeta, 1.0, o);
}

TraceNormWeight::TraceNormWeight(const OperatorMatrix& fhat, double r_max, double table_step,
                                 const HeisenbergBeurlingOptions& opts)
    : step_(table_step), net_radii_(opts.net_radii) {
  const BasisSpec& b = fhat.basis();
  if (b.n() != 1) throw std::invalid_argument("TraceNormWeight: n = 1 only");
  if (r_max > kImagRadius / std::sqrt(std::abs(b.lambda())) * (1.0 + 1e-12))
    throw std::out_of_range("TraceNormWeight: radius beyond the pi_complex range guard");
  if (!(table_step > 0.0)) throw std::invalid_argument("TraceNormWeight: step must be positive");
  const std::size_t nodes = static_cast<std::size_t>(std::ceil(r_max / table_step - 1e-9)) + 1;
  table_.assign(nodes, 0.0);
  const int D = opts.directions;
  std::vector<double> vals(nodes * D);
  parallel_for(nodes * D, [&](std::size_t i) {
    const double r = std::min(r_max, (i / D) * table_step);
    const double th = 2.0 * kPi * double(i % D) / D;
    const Complex z[1] = {Complex(0.0, r * std::cos(th))};
    const Complex w[1] = {Complex(0.0, r * std::sin(th))};
    vals[i] = schatten_norm(pi_complex(z, w, b) * fhat, Schatten::One);
  });
  for (std::size_t j = 0; j < nodes; ++j)
    for (int d = 0; d < D; ++d) table_[j] = std::max(table_[j], vals[j * D + d]);
}

double TraceNormWeight::interp(double r) const {
  const double x = r / step_;
  const std::size_t j = static_cast<std::size_t>(std::floor(x));
  if (j + 1 >= table_.size()) {
    if (x <= double(table_.size() - 1) + 1e-9) return table_.back();
    throw std::out_of_range("TraceNormWeight: radius beyond the table");
  }
  const double t = x - j;
  if (t < 1e-12) return table_[j];
  return (1.0 - t) * table_[j] + t * table_[j + 1];
}

double TraceNormWeight::operator()(double r) const {
  double w = table_[0];
  for (int j = 1; j <= net_radii_; ++j) w = std::max(w, interp(r * j / net_radii_));
  return w;
}

FunctionalProfile heisenberg_beurling(const OperatorMatrix& fhat, const SampledFunction& fl,
                                      std::span<const double> radii,
                                      const HeisenbergBeurlingOptions& opts) {
  require_increasing(radii);
  const BasisSpec& b = fhat.basis();
  if (b.n() != 1 || fl.grid.dim() != 2)
    throw std::invalid_argument("heisenberg_beurling: n = 1 only");
  if (opts.check_consistency) {
    const auto W = weyl_transform(fl, b);
    const double scale = std::max(1.0, fhat.entries().cwiseAbs().maxCoeff());
    const double diff = (W.entries() - fhat.entries()).cwiseAbs().maxCoeff();
    if (diff > opts.consistency_tol * scale)
      throw std::invalid_argument("heisenberg_beurling: fhat differs from weyl_transform(fl)");
  }
  const double guard = kImagRadius / std::sqrt(std::abs(b.lambda()));
  std::vector<double> kept;
  for (double r : radii)
    if (r <= guard * (1.0 + 1e-12)) kept.push_back(r);
  if (kept.empty()) throw std::out_of_range("heisenberg_beurling: all radii beyond the range guard");
  // Table step divides the profile step so that every net radius of a profile
  // radius is a table node.
  const double base = kept.size() > 1 ? kept[1] - kept[0] : kept[0];
  const TraceNormWeight w(fhat, kept.back(), base / opts.table_refine, opts);
  const Grid& g = fl.grid;
  auto prof = accumulate_profile(
      kept, g.size(),
      [&](std::size_t i) {
        double p[2];
        g.point(i, p);
        return std::hypot(p[0], p[1]);
      },
      [&](std::size_t i) {
        double p[2];
        g.point(i, p);
        return std::abs(fl.values[i]) * w(std::hypot(p[0], p[1])) * g.weight(i);
      });
  if (kept.size() < radii.size())
    prof.notes = "profile truncated at the pi_complex range guard R = " + std::to_string(guard);
  return prof;
}

double hardy_h(double bprime, double lambda) {
  if (lambda == 0.0) return 1.0 / (2.0 * bprime);
  return coth_factor(2.0 * bprime, lambda);
}

HardyWindow hardy_window(double a, double b, double bprime) {
  if (!(a > 0.0) || a >= b) throw std::invalid_argument("hardy_window: requires 0 < a < b");
  if (!(a < bprime && bprime < b)) throw std::invalid_argument("hardy_window: requires a < b' < b");
  HardyWindow out;
  out.limit = 1.0 / (2.0 * bprime);
  out.threshold = 1.0 / (2.0 * a);
  auto g = [&](double l) { return hardy_h(bprime, l) - out.threshold; };
  if (g(1.0) < 0.0) {
    out.delta = 1.0;
  } else {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    out.delta = lo;
  }
  out.certified = g(out.delta) < 0.0 && (out.delta >= 1.0 || g(out.delta + 1e-10) >= 0.0);
  const int T = 32;
  for (int i = 0; i <= T; ++i) {
    const double l = std::max(1e-8, 2.0 * out.delta * i / T);
    out.table.emplace_back(l, hardy_h(bprime, l));
  }
  return out;
}

HardyBeurlingResult hardy_beurling_integral(double a, double bprime, double lambda, int n) {
  if (!(bprime > 0.0) || !(a > 0.0)) throw std::invalid_argument("hardy_beurling_integral: a, b' > 0");
  HardyBeurlingResult out;
  const double kap = coth_factor(2.0 * bprime, lambda);
  const double inv4a = std::isinf(a) ? 0.0 : 1.0 / (4.0 * a);
  out.exponent = 0.5 * kap - inv4a;
  if (out.exponent >= 0.0) {
    out.value = out.closed_form = kInf;
    return out;
  }
  out.finite = true;
  // √p_{2b′}(2iY) = √pre e^{κ r²/2}
  const double root_pre = std::pow(sinh_factor(2.0 * bprime, lambda) / (4.0 * kPi), 0.5 * n);
  const double e = -out.exponent;
  out.closed_form = root_pre * std::pow(kPi / e, n);
  const double area = 2.0 * std::pow(kPi, n) / std::tgamma(double(n));
  const double R = std::sqrt(40.0 / e);
  out.value = root_pre * area *
              integrate_panels([&](double r) { return std::pow(r, 2 * n - 1) * std::exp(-e * r * r); },
                               0.0, R, 40, 20);
  return out;
}

CowlingPriceResult cowling_price_bound(double a, double lambda_max, int n, double r_max,
                                       int radial_points) {
  if (!(a > 0.0) || !(lambda_max > 0.0)) throw std::invalid_argument("cowling_price_bound: a, Λ > 0");
  CowlingPriceResult out;
  auto lam_int = [&](double L, const std::function<double(double)>& f) {
    return 2.0 * integrate_panels(f, 0.0, L, static_cast<int>(std::ceil(L)) * 4, 20);
  };
  auto sfac = [&](double l) { return std::pow(sinh_factor(a, l), 2 * n); };
  out.lambda_integral = lam_int(lambda_max, sfac);
  out.lambda_integral_doubled = lam_int(2.0 * lambda_max, sfac);
  out.analytic_C = std::pow(4.0 * kPi, -2 * n);
  double C = 0.0;
  for (int i = 0; i < radial_points; ++i) {
    const double r = r_max * i / (radial_points - 1);
    const double lhs = lam_int(lambda_max, [&](double l) {
      const double p = heat_kernel_radial(KernelParams(a, l, n), r * r);
      return p * p;
    });
    const double rhs = std::exp(-r * r / (2.0 * a)) * out.lambda_integral;
    C = std::max(C, lhs / rhs);
  }
  out.C = C;
  return out;
}

Complex hermite_projection(const SampledFunction& f, int k, std::span<const Complex> z) {
  const int n = f.grid.dim();
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("hermite_projection: dimension mismatch");
  return deterministic_sum<Complex>(f.grid.size(), [&](std::size_t i) {
    std::vector<double> y = f.grid.point(i);
    std::vector<Complex> yc(y.begin(), y.end());
    return f.values[i] * hermite_projection_kernel(k, z, yc) * f.grid.weight(i);
  });
}

std::vector<double> hermite_projection_norms(const SampledFunction& f, int kmax) {
  const int n = f.grid.dim();
  const BasisSpec basis(n, 1.0, kmax);
  const std::size_t N = f.grid.size();
  std::vector<Complex> coef(basis.dim(), 0.0);
  // Hermite coefficients ⟨f, Φ_α⟩ with per-axis tables.
  std::vector<std::vector<double>> tables(n);
  for (int ax = 0; ax < n; ++ax) {
    const auto xs = f.grid.axis_coords(ax);
    tables[ax].resize(xs.size() * (kmax + 1));
    for (std::size_t i = 0; i < xs.size(); ++i) hermite_fns(kmax, xs[i], &tables[ax][i * (kmax + 1)]);
  }
  const auto& idx = basis.indices();
  parallel_for(idx.size(), [&](std::size_t a) {
    std::vector<Complex> terms(N);
    std::vector<int> sub(n);
    for (std::size_t i = 0; i < N; ++i) {
      std::size_t rest = i;
      double h = 1.0;
      for (int ax = n - 1; ax >= 0; --ax) {
        const std::size_t P = f.grid.points(ax);
        sub[ax] = static_cast<int>(rest % P);
        rest /= P;
      }
      for (int ax = 0; ax < n; ++ax) h *= tables[ax][sub[ax] * (kmax + 1) + idx[a][ax]];
      terms[i] = f.values[i] * h * f.grid.weight(i);
    }
    coef[a] = tree_reduce(std::move(terms));
  });
  std::vector<double> out(kmax + 1, 0.0);
  for (std::size_t a = 0; a < idx.size(); ++a) out[degree(idx[a])] += std::norm(coef[a]);
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

double hermite_projection_bound(int k, int n, double norm, std::span<const Complex> z) {
  double r2 = 0.0;
  for (const auto& c : z) r2 += c.imag() * c.imag();
  return std::pow(kPi, -0.25 * n) * norm * std::sqrt(phi_imag_radial(k, n, 1.0, std::sqrt(r2)));
}

FunctionalProfile beurling_hermite(const SampledFunction& f, int kmax,
                                   std::span<const double> radii) {
  const int n = f.grid.dim();
  const auto norms = hermite_projection_norms(f, kmax);
  const Grid& g = f.grid;
  return accumulate_profile(
      radii, g.size(), [&](std::size_t i) { return norm2(g.point(i)); },
      [&](std::size_t i) {
        const double r = norm2(g.point(i));
        const double af = std::abs(f.values[i]);
        if (af == 0.0) return 0.0;
        double s = 0.0;
        for (int k = 0; k <= kmax; ++k)
          if (norms[k] > 0.0) s += norms[k] * std::sqrt(phi_imag_radial(k, n, 1.0, r));
        return af * s * g.weight(i);
      });
}

FunctionalProfile beurling_hermite_synthetic(const std::function<double(double)>& abs_f,
                                             std::span<const double> norms,
                                             std::span<const double> radii) {
  require_increasing(radii);
  const int kmax = static_cast<int>(norms.size()) - 1;
  auto integrand = [&](double y) {
    const double r = std::abs(y);
    const auto L = laguerre_sequence(kmax, 0.0, -2.0 * r * r);
    double s = 0.0;
    for (int k = 0; k <= kmax; ++k) s += norms[k] * std::sqrt(L[k]);
    return abs_f(r) * s * std::exp(0.5 * r * r);
  };
  FunctionalProfile p;
  p.radii.assign(radii.begin(), radii.end());
  double acc = 0.0, prev = 0.0;
  for (double R : radii) {
    const int panels = std::max(1, static_cast<int>(std::ceil((R - prev) * 4)));
    // symmetric in y: twice the integral over [prev, R]
    acc += 2.0 * integrate_panels(integrand, prev, R, panels, 20);
    p.partials.push_back(acc);
    prev = R;
  }
  p.verdict = classify(p.partials);
  return p;
}

MajorantValue hermite_heat_majorant(double bprime, std::span<const double> y, int kmax) {
  if (!(bprime > 0.0)) throw std::invalid_argument("hermite_heat_majorant: b' must be positive");
  const int n = static_cast<int>(y.size());
  const double r = norm2(y);
  std::vector<double> terms(kmax + 1);
  const auto L = laguerre_sequence(kmax, n - 1.0, -2.0 * r * r);
  for (int k = 0; k <= kmax; ++k)
    terms[k] = std::exp(-bprime * (2.0 * k + n) + r * r) * L[k];
  MajorantValue out;
  const double last = terms.back();
  out.series = tree_reduce(terms);
  if (last > 1e-12 * out.series)
    throw std::runtime_error("hermite_heat_majorant: series tail not below 1e-12; raise kmax");
  out.closed_form = std::exp(r * r / std::tanh(bprime)) / std::pow(2.0 * std::sinh(bprime), n);
  out.rel_err = std::abs(out.series - out.closed_form) / out.closed_form;
  return out;
}

}  // namespace heis
