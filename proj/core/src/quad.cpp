#include "heis/quad.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "heis/parallel.hpp"

namespace heis {

Grid::Grid(int dim, double extent, int points)
    : Grid(std::vector<double>(dim, extent), std::vector<int>(dim, points)) {}

Grid::Grid(std::vector<double> extents, std::vector<int> points)
    : extent_(std::move(extents)), points_(std::move(points)) {
  if (extent_.size() != points_.size() || extent_.empty())
    throw std::invalid_argument("Grid: extents and point counts must match");
  for (std::size_t a = 0; a < extent_.size(); ++a) {
    if (points_[a] < 2) throw std::invalid_argument("Grid: need at least 2 points per axis");
    if (!(extent_[a] > 0.0)) throw std::invalid_argument("Grid: extent must be positive");
  }
}

std::vector<double> Grid::axis_coords(int axis) const {
  std::vector<double> c(points_[axis]);
  for (int i = 0; i < points_[axis]; ++i) c[i] = coord(axis, i);
  return c;
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int p : points_) s *= static_cast<std::size_t>(p);
  return s;
}

void Grid::point(std::size_t flat, double* out) const {
  for (int a = dim() - 1; a >= 0; --a) {
    const std::size_t p = points_[a];
    out[a] = coord(a, static_cast<int>(flat % p));
    flat /= p;
  }
}

std::vector<double> Grid::point(std::size_t flat) const {
  std::vector<double> p(dim());
  point(flat, p.data());
  return p;
}

bool Grid::on_boundary(std::size_t flat) const {
  for (int a = dim() - 1; a >= 0; --a) {
    const std::size_t p = points_[a];
    const std::size_t i = flat % p;
    if (i == 0 || i + 1 == p) return true;
    flat /= p;
  }
  return false;
}

double Grid::weight(std::size_t flat) const {
  double w = 1.0;
  for (int a = dim() - 1; a >= 0; --a) {
    const std::size_t p = points_[a];
    const std::size_t i = flat % p;
    w *= spacing(a) * ((i == 0 || i + 1 == p) ? 0.5 : 1.0);
    flat /= p;
  }
  return w;
}

SampledFunction::SampledFunction(Grid g, std::vector<Complex> v, int n_, std::optional<double> l)
    : grid(std::move(g)), values(std::move(v)), n(n_), lambda(l) {
  if (values.size() != grid.size())
    throw std::invalid_argument("SampledFunction: value count does not match grid");
}

double SampledFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::l2_norm_sq() const {
  return deterministic_sum<double>(values.size(), [&](std::size_t i) {
    return std::norm(values[i]) * grid.weight(i);
  });
}

SampledFunction sample(const Grid& grid, const std::function<Complex(std::span<const double>)>& f,
                       int n, std::optional<double> lambda) {
  std::vector<Complex> v(grid.size());
  parallel_for((grid.size() + 255) / 256, [&](std::size_t b) {
    std::vector<double> p(grid.dim());
    const std::size_t end = std::min(grid.size(), (b + 1) * 256);
    for (std::size_t i = b * 256; i < end; ++i) {
      grid.point(i, p.data());
      v[i] = f(p);
    }
  });
  return SampledFunction(grid, std::move(v), n, lambda);
}

namespace {

Integral finish(const Grid& grid, const std::vector<Complex>& vals, double decay_tol) {
  Integral r;
  r.value = deterministic_sum<Complex>(vals.size(), [&](std::size_t i) {
    return vals[i] * grid.weight(i);
  });
  double peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double a = std::abs(vals[i]);
    peak = std::max(peak, a);
    if (grid.on_boundary(i)) edge = std::max(edge, a);
  }
  r.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
  r.boundary_ok = r.boundary_ratio <= decay_tol;
  if (!r.boundary_ok)
    r.warning = "integrand at grid boundary is " + std::to_string(r.boundary_ratio) +
                " of its peak";
  return r;
}

}  // namespace

Integral integrate(const SampledFunction& f, double decay_tol) {
  return finish(f.grid, f.values, decay_tol);
}

Integral integrate(const Grid& grid, const std::function<Complex(std::span<const double>)>& f,
                   double decay_tol) {
  return finish(grid, sample(grid, f).values, decay_tol);
}

// ---------------------------------------------------------------------------
// Gauss rules

namespace {

GaussHermiteRule build_gauss_hermite(int m) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) off[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  GaussHermiteRule r;
  r.order = m;
  r.nodes.resize(m);
  r.weights.resize(m);
  r.plain_weights.resize(m);
  std::vector<double> h(m + 1);
  for (int i = 0; i < m; ++i) {
    double t = es.eigenvalues()[i];
    // Newton on h_m using h_m' = sqrt(2m) h_{m-1} - t h_m
    for (int it = 0; it < 4; ++it) {
      hermite_fns(m, t, h.data());
      const double d = std::sqrt(2.0 * m) * h[m - 1] - t * h[m];
      if (d == 0.0) break;
      const double step = h[m] / d;
      t -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    hermite_fns(m, t, h.data());
    r.nodes[i] = t;
    r.plain_weights[i] = 1.0 / (m * h[m - 1] * h[m - 1]);
    r.weights[i] = r.plain_weights[i] * std::exp(-t * t);
  }
  // enforce exact symmetry
  for (int i = 0; i < m / 2; ++i) {
    const double t = 0.5 * (r.nodes[m - 1 - i] - r.nodes[i]);
    r.nodes[i] = -t;
    r.nodes[m - 1 - i] = t;
    const double w = 0.5 * (r.plain_weights[i] + r.plain_weights[m - 1 - i]);
    r.plain_weights[i] = r.plain_weights[m - 1 - i] = w;
    r.weights[i] = r.weights[m - 1 - i] = w * std::exp(-t * t);
  }
  if (m % 2 == 1) {
    r.nodes[m / 2] = 0.0;
    r.weights[m / 2] = r.plain_weights[m / 2];
  }
  return r;
}

GaussLegendreRule build_gauss_legendre(int m) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  GaussLegendreRule r;
  r.order = m;
  r.nodes.resize(m);
  r.weights.resize(m);
  auto legendre = [m](double x, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < m; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < m; ++i) {
    double x = es.eigenvalues()[i];
    double dp = 1.0;
    for (int it = 0; it < 5; ++it) {
      const double step = legendre(x, dp) / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    legendre(x, dp);
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

template <class Rule, class Build>
const Rule& cached_rule(int m, Build build) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, std::make_unique<Rule>(build(m))).first;
  return *it->second;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  return cached_rule<GaussHermiteRule>(order, build_gauss_hermite);
}

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  return cached_rule<GaussLegendreRule>(order, build_gauss_legendre);
}

GaussHermiteRule GaussHermiteRule::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("GaussHermiteRule::scaled: scale must be positive");
  GaussHermiteRule r = *this;
  const double f = std::sqrt(s / scale);
  for (int i = 0; i < order; ++i) {
    r.nodes[i] = nodes[i] / f;
    r.weights[i] = weights[i] / f;
    r.plain_weights[i] = plain_weights[i] / f;
  }
  r.scale = s;
  return r;
}

Complex GaussHermiteRule::integrate(const std::function<Complex(double)>& f) const {
  std::vector<Complex> terms(order);
  for (int i = 0; i < order; ++i) terms[i] = weights[i] * f(nodes[i]);
  return tree_reduce(std::move(terms));
}

Complex GaussHermiteRule::integrate_plain(const std::function<Complex(double)>& g) const {
  std::vector<Complex> terms(order);
  for (int i = 0; i < order; ++i) terms[i] = plain_weights[i] * g(nodes[i]);
  return tree_reduce(std::move(terms));
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int order) {
  const auto& gl = gauss_legendre(order);
  const double h = (b - a) / panels;
  std::vector<double> parts(panels);
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < gl.order; ++i) s += gl.weights[i] * f(c + 0.5 * h * gl.nodes[i]);
    parts[p] = 0.5 * h * s;
  }
  return tree_reduce(std::move(parts));
}

// ---------------------------------------------------------------------------
// Unitary group

UnitarySample unitary_from(const Eigen::MatrixXcd& sigma) {
  const Eigen::Index n = sigma.rows();
  UnitarySample s;
  s.complex_matrix = sigma;
  s.real_embedding.resize(2 * n, 2 * n);
  const Eigen::MatrixXd A = sigma.real(), B = sigma.imag();
  s.real_embedding.topLeftCorner(n, n) = A;
  s.real_embedding.topRightCorner(n, n) = -B;
  s.real_embedding.bottomLeftCorner(n, n) = B;
  s.real_embedding.bottomRightCorner(n, n) = A;
  return s;
}

UnitarySample haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: n must be >= 1");
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd Z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) Z(i, j) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = R(j, j);
    const double a = std::abs(d);
    Q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
  }
  return unitary_from(Q);
}

UnitarySample haar_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(n, rng);
}

double symplectic_form(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.size() % 2 != 0)
    throw std::invalid_argument("symplectic_form: dimension mismatch");
  const std::size_t n = p.size() / 2;
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += p[n + j] * q[j] - q[n + j] * p[j];
  return s;
}

std::vector<double> apply_real(const UnitarySample& s, std::span<const double> xu) {
  Eigen::Map<const Eigen::VectorXd> v(xu.data(), static_cast<Eigen::Index>(xu.size()));
  Eigen::VectorXd r = s.real_embedding * v;
  return std::vector<double>(r.data(), r.data() + r.size());
}

UnitaryRule unitary_rule(int n, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("unitary_rule: count must be >= 1");
  UnitaryRule r;
  if (n == 1) {
    for (int j = 0; j < count; ++j) {
      const double th = 2.0 * std::numbers::pi * j / count;
      Eigen::MatrixXcd m(1, 1);
      m(0, 0) = std::polar(1.0, th);
      r.samples.push_back(unitary_from(m));
      r.weights.push_back(1.0 / count);
    }
    return r;
  }
  std::mt19937_64 rng(seed);
  r.monte_carlo = true;
  for (int j = 0; j < count; ++j) {
    r.samples.push_back(haar_unitary(n, rng));
    r.weights.push_back(1.0 / count);
  }
  return r;
}

Average unitary_average(const UnitaryRule& rule,
                        const std::function<double(const UnitarySample&)>& f) {
  std::vector<double> v(rule.samples.size());
  parallel_for(v.size(), [&](std::size_t i) { v[i] = f(rule.samples[i]); });
  std::vector<double> wv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) wv[i] = rule.weights[i] * v[i];
  Average a;
  a.mean = tree_reduce(wv);
  if (rule.monte_carlo && v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - a.mean) * (x - a.mean);
    a.std_error = std::sqrt(ss / (v.size() - 1) / v.size());
  }
  return a;
}

}  // namespace heis
