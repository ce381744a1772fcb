#include "heis/special_fn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heis {

int degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

Complex bilinear_square(std::span<const Complex> z) {
  Complex s = 0.0;
  for (const Complex& c : z) s += c * c;
  return s;
}

namespace {

template <class T>
T laguerre_impl(int k, double alpha, T t) {
  if (k < 0) throw std::invalid_argument("laguerre: negative degree");
  T prev = T(1.0);
  if (k == 0) return prev;
  T cur = T(1.0 + alpha) - t;
  for (int j = 1; j < k; ++j) {
    T next = ((T(2.0 * j + 1.0 + alpha) - t) * cur - T(j + alpha) * prev) / T(j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

template <class T>
std::vector<T> laguerre_seq_impl(int kmax, double alpha, T t) {
  std::vector<T> out(static_cast<std::size_t>(kmax) + 1);
  out[0] = T(1.0);
  if (kmax >= 1) out[1] = T(1.0 + alpha) - t;
  for (int j = 1; j < kmax; ++j)
    out[j + 1] = ((T(2.0 * j + 1.0 + alpha) - t) * out[j] - T(j + alpha) * out[j - 1]) /
                 T(j + 1.0);
  return out;
}

template <class T>
void hermite_fns_impl(int kmax, T z, T* out) {
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-z * z / 2.0);
  if (kmax >= 1) out[1] = std::sqrt(2.0) * z * out[0];
  for (int j = 1; j < kmax; ++j)
    out[j + 1] = std::sqrt(2.0 / (j + 1)) * z * out[j] - std::sqrt(double(j) / (j + 1)) * out[j - 1];
}

}  // namespace

Complex laguerre(int k, double alpha, Complex t) { return laguerre_impl<Complex>(k, alpha, t); }
double laguerre(int k, double alpha, double t) { return laguerre_impl<double>(k, alpha, t); }

std::vector<Complex> laguerre_sequence(int kmax, double alpha, Complex t) {
  return laguerre_seq_impl<Complex>(kmax, alpha, t);
}
std::vector<double> laguerre_sequence(int kmax, double alpha, double t) {
  return laguerre_seq_impl<double>(kmax, alpha, t);
}

Complex hermite_poly(int k, Complex z) {
  Complex prev = 1.0;
  if (k == 0) return prev;
  Complex cur = 2.0 * z;
  for (int j = 1; j < k; ++j) {
    Complex next = 2.0 * z * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_norm_const(int k) {
  // log form keeps k! finite
  double lg = k * std::log(2.0) + std::lgamma(k + 1.0) + 0.5 * std::log(std::numbers::pi);
  return std::exp(-0.5 * lg);
}

void hermite_fns(int kmax, Complex z, Complex* out) { hermite_fns_impl<Complex>(kmax, z, out); }
void hermite_fns(int kmax, double x, double* out) { hermite_fns_impl<double>(kmax, x, out); }

std::vector<Complex> hermite_fns(int kmax, Complex z) {
  std::vector<Complex> out(static_cast<std::size_t>(kmax) + 1);
  hermite_fns(kmax, z, out.data());
  return out;
}

Complex hermite_fn(const MultiIndex& alpha, std::span<const Complex> z, double lambda) {
  if (alpha.size() != z.size()) throw std::invalid_argument("hermite_fn: dimension mismatch");
  const double s = std::sqrt(std::abs(lambda));
  Complex v = std::pow(std::abs(lambda), 0.25 * double(z.size()));
  std::vector<Complex> buf;
  for (std::size_t j = 0; j < z.size(); ++j) {
    buf.resize(static_cast<std::size_t>(alpha[j]) + 1);
    hermite_fns(alpha[j], s * z[j], buf.data());
    v *= buf[alpha[j]];
  }
  return v;
}

Complex laguerre_fn_phi(int k, int n, double lambda, std::span<const Complex> zw) {
  if (zw.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("laguerre_fn_phi: expected 2n coordinates");
  const double l = std::abs(lambda);
  Complex q = bilinear_square(zw);
  return laguerre(k, n - 1.0, 0.5 * l * q) * std::exp(-0.25 * l * q);
}

double laguerre_fn_phi_radial(int k, int n, double lambda, double rho2) {
  const double l = std::abs(lambda);
  return laguerre(k, n - 1.0, 0.5 * l * rho2) * std::exp(-0.25 * l * rho2);
}

double phi_imag_radial(int k, int n, double lambda, double r) {
  const double l = std::abs(lambda);
  return laguerre(k, n - 1.0, -2.0 * l * r * r) * std::exp(l * r * r);
}

std::optional<Complex> perron_asymptotic(int k, double alpha, Complex s) {
  if (s.imag() == 0.0 && s.real() >= 0.0)
    throw std::domain_error("perron_asymptotic: s on the branch cut [0, inf)");
  if (k < kPerronMinDegree) return std::nullopt;
  const Complex ms = -s;
  const double kk = k;
  return 0.5 / std::sqrt(std::numbers::pi) * std::exp(s / 2.0) *
         std::pow(ms, -alpha / 2.0 - 0.25) * std::pow(kk, alpha / 2.0 - 0.25) *
         std::exp(2.0 * std::sqrt(ms * kk));
}

Complex hermite_projection_kernel(int k, std::span<const Complex> z,
                                  std::span<const Complex> w) {
  if (z.size() != w.size() || z.empty())
    throw std::invalid_argument("hermite_projection_kernel: dimension mismatch");
  const std::size_t n = z.size();
  const double a = n / 2.0 - 1.0;
  std::vector<Complex> sum(n), diff(n);
  for (std::size_t j = 0; j < n; ++j) {
    sum[j] = z[j] + w[j];
    diff[j] = z[j] - w[j];
  }
  auto lp = laguerre_sequence(k, a, bilinear_square(sum) / 2.0);
  auto lm = laguerre_sequence(k, a, bilinear_square(diff) / 2.0);
  Complex acc = 0.0;
  for (int j = 0; j <= k; ++j) acc += (j % 2 == 0 ? 1.0 : -1.0) * lp[j] * lm[k - j];
  const Complex g = std::exp(-(bilinear_square(z) + bilinear_square(w)) / 2.0);
  return std::pow(std::numbers::pi, -0.5 * double(n)) * acc * g;
}

double laguerre_dimension(int k, int n) {
  return std::round(std::exp(std::lgamma(k + n) - std::lgamma(k + 1.0) - std::lgamma(double(n))));
}

}  // namespace heis
