#include "heis/weyl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "heis/parallel.hpp"

namespace heis {

namespace {

void enumerate_degree(int n, int k, MultiIndex& cur, int pos, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  // lexicographic: larger leading entries first
  for (int a = k; a >= 0; --a) {
    cur[pos] = a;
    enumerate_degree(n, k - a, cur, pos + 1, out);
  }
}

}  // namespace

BasisSpec::BasisSpec(int n, double lambda, int K) : n_(n), lambda_(lambda), K_(K) {
  if (n < 1) throw std::invalid_argument("BasisSpec: n must be >= 1");
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("BasisSpec: lambda must be finite and nonzero");
  if (K < 0) throw std::invalid_argument("BasisSpec: K must be >= 0");
  MultiIndex cur(n, 0);
  for (int k = 0; k <= K; ++k) enumerate_degree(n, k, cur, 0, indices_);
}

std::size_t BasisSpec::index_of(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("index_of: wrong length");
  const int k = degree(alpha);
  if (k > K_) throw std::out_of_range("index_of: degree exceeds K");
  auto [b, e] = degree_block(k);
  for (std::size_t i = b; i < e; ++i)
    if (indices_[i] == alpha) return i;
  throw std::out_of_range("index_of: not found");
}

std::size_t BasisSpec::dim_up_to(int k) const {
  if (k < 0) return 0;
  k = std::min(k, K_);
  // binom(k+n, n)
  double v = 1.0;
  for (int j = 1; j <= n_; ++j) v = v * (k + j) / j;
  return static_cast<std::size_t>(std::llround(v));
}

std::pair<std::size_t, std::size_t> BasisSpec::degree_block(int k) const {
  return {dim_up_to(k - 1), dim_up_to(k)};
}

OperatorMatrix::OperatorMatrix(BasisSpec basis, Eigen::MatrixXcd entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(basis_.dim());
  if (entries_.rows() != d || entries_.cols() != d)
    throw std::invalid_argument("OperatorMatrix: shape does not match basis");
}

OperatorMatrix OperatorMatrix::adjoint() const { return {basis_, entries_.adjoint()}; }

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  if (!(basis_ == rhs.basis_)) throw std::invalid_argument("OperatorMatrix: basis mismatch");
  return {basis_, entries_ * rhs.entries_};
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
  if (!(basis_ == rhs.basis_)) throw std::invalid_argument("OperatorMatrix: basis mismatch");
  return {basis_, entries_ + rhs.entries_};
}

OperatorMatrix OperatorMatrix::operator*(Complex c) const { return {basis_, entries_ * c}; }

int displacement_order(int K, double omega) {
  const int base = 2 * K + 16;
  const int wave = static_cast<int>(std::ceil(2.0 * omega * omega)) + 16;
  return std::min(std::max(base, wave), 600);
}

Eigen::MatrixXcd displacement_1d(Complex z, Complex w, int K) {
  const auto& rule = gauss_hermite(displacement_order(K, std::abs(z.real() - w.imag())));
  const int m = rule.order;
  const double c = -(w.real() + z.imag()) / 2.0;
  Eigen::MatrixXcd A(K + 1, m), B(K + 1, m);
  std::vector<Complex> ha(K + 1), hb(K + 1);
  for (int i = 0; i < m; ++i) {
    const double s = rule.nodes[i] + c;
    hermite_fns(K, Complex(s), ha.data());
    hermite_fns(K, Complex(s) + w, hb.data());
    const Complex ph = rule.plain_weights[i] * std::exp(Complex(0, 1) * (z * s + z * w / 2.0));
    for (int a = 0; a <= K; ++a) {
      A(a, i) = ha[a] * ph;
      B(a, i) = hb[a];
    }
  }
  return A * B.transpose();
}

namespace {

void range_guard(std::span<const Complex> z, std::span<const Complex> w, double lambda) {
  double r2 = 0.0;
  for (const auto& c : z) r2 += c.imag() * c.imag();
  for (const auto& c : w) r2 += c.imag() * c.imag();
  if (std::sqrt(r2) > kImagRadius / std::sqrt(std::abs(lambda)) * (1.0 + 1e-12))
    throw std::out_of_range("imaginary part exceeds the supported radius 6/sqrt|lambda|");
}

OperatorMatrix tensor_blocks(const std::vector<Eigen::MatrixXcd>& blocks, const BasisSpec& basis) {
  const auto& idx = basis.indices();
  const std::size_t d = basis.dim();
  Eigen::MatrixXcd M(d, d);
  parallel_for(d, [&](std::size_t b) {
    for (std::size_t a = 0; a < d; ++a) {
      Complex v = 1.0;
      for (int j = 0; j < basis.n(); ++j) v *= blocks[j](idx[a][j], idx[b][j]);
      M(a, b) = v;
    }
  });
  return {basis, std::move(M)};
}

}  // namespace

OperatorMatrix pi_complex(std::span<const Complex> z, std::span<const Complex> w,
                          const BasisSpec& basis) {
  const std::size_t n = basis.n();
  if (z.size() != n || w.size() != n) throw std::invalid_argument("pi_complex: dimension mismatch");
  range_guard(z, w, basis.lambda());
  const double s = std::sqrt(std::abs(basis.lambda()));
  const double sz = basis.lambda() > 0 ? s : -s;
  std::vector<Eigen::MatrixXcd> blocks;
  for (std::size_t j = 0; j < n; ++j) blocks.push_back(displacement_1d(sz * z[j], s * w[j], basis.K()));
  return tensor_blocks(blocks, basis);
}

OperatorMatrix pi_real(std::span<const double> x, std::span<const double> u,
                       const BasisSpec& basis) {
  std::vector<Complex> z(x.begin(), x.end()), w(u.begin(), u.end());
  return pi_complex(z, w, basis);
}

namespace {

struct RowTables {
  int m;
  std::vector<double> t, wt;
  Eigen::MatrixXcd E;  // E(ix, i) = e^{i x' t_i}
};

RowTables row_tables(const Grid& grid, const BasisSpec& basis) {
  const double s = std::sqrt(std::abs(basis.lambda()));
  const auto& rule = gauss_hermite(displacement_order(basis.K(), s * grid.extent(0)));
  RowTables r{rule.order, rule.nodes, rule.plain_weights, {}};
  const double sx = basis.lambda() > 0 ? s : -s;
  const int nx = grid.points(0);
  r.E.resize(nx, r.m);
  for (int ix = 0; ix < nx; ++ix)
    for (int i = 0; i < r.m; ++i)
      r.E(ix, i) = std::polar(1.0, sx * grid.coord(0, ix) * r.t[i]);
  return r;
}

// Hermite tables at s_i = t_i - u'/2 and s_i + u'.
void row_hermite(const RowTables& tab, double up, int K, Eigen::MatrixXd& HA, Eigen::MatrixXd& HB) {
  HA.resize(K + 1, tab.m);
  HB.resize(K + 1, tab.m);
  std::vector<double> buf(K + 1);
  for (int i = 0; i < tab.m; ++i) {
    const double s = tab.t[i] - up / 2.0;
    hermite_fns(K, s, buf.data());
    for (int a = 0; a <= K; ++a) HA(a, i) = buf[a];
    hermite_fns(K, s + up, buf.data());
    for (int a = 0; a <= K; ++a) HB(a, i) = buf[a];
  }
}

void require_plane(const Grid& grid, const BasisSpec& basis, const char* who) {
  if (basis.n() != 1) throw std::invalid_argument(std::string(who) + ": grid operators support n = 1 only");
  if (grid.dim() != 2) throw std::invalid_argument(std::string(who) + ": expected a grid on R^2");
}

}  // namespace

OperatorMatrix weyl_transform(const SampledFunction& g, const BasisSpec& basis) {
  const Grid& grid = g.grid;
  require_plane(grid, basis, "weyl_transform");
  const int K = basis.K();
  const auto tab = row_tables(grid, basis);
  const double s = std::sqrt(std::abs(basis.lambda()));
  const int nx = grid.points(0), nu = grid.points(1);
  std::vector<Eigen::MatrixXcd> rows(nu);
  parallel_for(nu, [&](std::size_t ju) {
    Eigen::VectorXcd gx(nx);
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t flat = static_cast<std::size_t>(ix) * nu + ju;
      gx[ix] = g.values[flat] * grid.weight(flat);
    }
    Eigen::VectorXcd c = tab.E.transpose() * gx;
    for (int i = 0; i < tab.m; ++i) c[i] *= tab.wt[i];
    Eigen::MatrixXd HA, HB;
    row_hermite(tab, s * grid.coord(1, static_cast<int>(ju)), K, HA, HB);
    rows[ju] = (HA.cast<Complex>() * c.asDiagonal()) * HB.transpose().cast<Complex>();
  });
  return {basis, tree_reduce(std::move(rows))};
}

SampledFunction weyl_inverse(const OperatorMatrix& T, const Grid& grid) {
  const BasisSpec& basis = T.basis();
  require_plane(grid, basis, "weyl_inverse");
  const int K = basis.K();
  const auto tab = row_tables(grid, basis);
  const double l = std::abs(basis.lambda());
  const double s = std::sqrt(l);
  const double norm = l / (2.0 * std::numbers::pi);
  const int nx = grid.points(0), nu = grid.points(1);
  std::vector<Complex> out(grid.size());
  const Eigen::MatrixXcd& Tm = T.entries();
  parallel_for(nu, [&](std::size_t ju) {
    Eigen::MatrixXd HA, HB;
    row_hermite(tab, s * grid.coord(1, static_cast<int>(ju)), K, HA, HB);
    Eigen::MatrixXcd TB = Tm * HB.cast<Complex>();
    Eigen::VectorXcd D(tab.m);
    for (int i = 0; i < tab.m; ++i) D[i] = tab.wt[i] * HA.col(i).cast<Complex>().dot(TB.col(i));
    // HA real, so dot() conjugation is harmless
    Eigen::VectorXcd gx = tab.E.conjugate() * D;
    for (int ix = 0; ix < nx; ++ix) out[static_cast<std::size_t>(ix) * nu + ju] = norm * gx[ix];
  });
  return SampledFunction(grid, std::move(out), 1, basis.lambda());
}

Complex special_hermite(const MultiIndex& alpha, const MultiIndex& beta,
                        std::span<const Complex> zw, const BasisSpec& basis) {
  const std::size_t n = basis.n();
  if (alpha.size() != n || beta.size() != n || zw.size() != 2 * n)
    throw std::invalid_argument("special_hermite: dimension mismatch");
  if (degree(alpha) > basis.K() || degree(beta) > basis.K())
    throw std::out_of_range("special_hermite: index degree exceeds K");
  range_guard(zw.subspan(0, n), zw.subspan(n, n), basis.lambda());
  const double s = std::sqrt(std::abs(basis.lambda()));
  const double sz = basis.lambda() > 0 ? s : -s;
  Complex v = std::pow(2.0 * std::numbers::pi, -0.5 * double(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto blk = displacement_1d(sz * zw[j], s * zw[n + j], basis.K());
    v *= blk(beta[j], alpha[j]);
  }
  return v;
}

double schatten_norm(const Eigen::MatrixXcd& T, Schatten p) {
  if (p == Schatten::Two) return T.norm();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0.0;
  const double top = sv[0];
  if (p == Schatten::Infinity) return top;
  std::vector<double> kept;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] >= kSingularFloor * top) kept.push_back(sv[i]);
  return tree_reduce(std::move(kept));
}

double schatten_norm(const OperatorMatrix& T, Schatten p) { return schatten_norm(T.entries(), p); }

Complex trace(const OperatorMatrix& T) { return T.entries().trace(); }

OperatorMatrix hermite_semigroup(double a, const BasisSpec& basis) {
  if (a < 0.0) throw std::invalid_argument("hermite_semigroup: a must be >= 0");
  const std::size_t d = basis.dim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i)
    M(i, i) = std::exp(-a * (2.0 * degree(basis.indices()[i]) + basis.n()) * std::abs(basis.lambda()));
  return {basis, std::move(M)};
}

OperatorMatrix hermite_projector(int k, const BasisSpec& basis) {
  const std::size_t d = basis.dim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
  if (k >= 0 && k <= basis.K()) {
    auto [b, e] = basis.degree_block(k);
    for (std::size_t i = b; i < e; ++i) M(i, i) = 1.0;
  }
  return {basis, std::move(M)};
}

}  // namespace heis
