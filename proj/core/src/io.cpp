#include "heis/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace heis {

namespace {

static_assert(std::endian::native == std::endian::little, "binary format assumes little endian");

constexpr char kBinaryMagic[8] = {'H', 'E', 'I', 'S', 'O', 'P', 'B', '1'};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

// Reads "<key> <value>" and returns the value.
std::string expect_key(std::istream& is, const std::string& key) {
  std::string k, v;
  if (!(is >> k >> v) || k != key) throw std::runtime_error("operator file: expected '" + key + "'");
  return v;
}

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("binary operator: truncated");
  return v;
}

}  // namespace

void write_operator_text(std::ostream& os, const OperatorMatrix& T) {
  const BasisSpec& b = T.basis();
  os << "HEISOP 1\n"
     << "n " << b.n() << "\n"
     << "lambda " << fmt(b.lambda()) << "\n"
     << "K " << b.K() << "\n"
     << "dim " << b.dim() << "\n";
  const auto& E = T.entries();
  for (Eigen::Index i = 0; i < E.rows(); ++i) {
    for (Eigen::Index j = 0; j < E.cols(); ++j) {
      if (j) os << ' ';
      os << fmt(E(i, j).real()) << ' ' << fmt(E(i, j).imag());
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("write_operator_text: stream failure");
}

OperatorMatrix read_operator_text(std::istream& is) {
  std::string magic, version;
  if (!(is >> magic >> version) || magic != "HEISOP" || version != "1")
    throw std::runtime_error("operator file: bad header");
  const int n = std::stoi(expect_key(is, "n"));
  const double lambda = parse_double(expect_key(is, "lambda"));
  const int K = std::stoi(expect_key(is, "K"));
  const long dim = std::stol(expect_key(is, "dim"));
  BasisSpec basis(n, lambda, K);
  if (dim != static_cast<long>(basis.dim())) throw std::runtime_error("operator file: dim mismatch");
  Eigen::MatrixXcd E(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      std::string re, im;
      if (!(is >> re >> im)) throw std::runtime_error("operator file: truncated matrix");
      E(i, j) = Complex(parse_double(re), parse_double(im));
    }
  return OperatorMatrix(basis, std::move(E));
}

void write_operator_binary(std::ostream& os, const OperatorMatrix& T) {
  const BasisSpec& b = T.basis();
  os.write(kBinaryMagic, 8);
  put<std::int32_t>(os, b.n());
  put<double>(os, b.lambda());
  put<std::int32_t>(os, b.K());
  put<std::uint64_t>(os, b.dim());
  const auto& E = T.entries();
  for (Eigen::Index i = 0; i < E.rows(); ++i)
    for (Eigen::Index j = 0; j < E.cols(); ++j) {
      put<double>(os, E(i, j).real());
      put<double>(os, E(i, j).imag());
    }
  if (!os) throw std::runtime_error("write_operator_binary: stream failure");
}

OperatorMatrix read_operator_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kBinaryMagic))
    throw std::runtime_error("binary operator: bad magic");
  const int n = get<std::int32_t>(is);
  const double lambda = get<double>(is);
  const int K = get<std::int32_t>(is);
  const auto dim = get<std::uint64_t>(is);
  BasisSpec basis(n, lambda, K);
  if (dim != basis.dim()) throw std::runtime_error("binary operator: dim mismatch");
  Eigen::MatrixXcd E(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i)
    for (std::uint64_t j = 0; j < dim; ++j) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      E(i, j) = Complex(re, im);
    }
  return OperatorMatrix(basis, std::move(E));
}

void write_sampled(std::ostream& os, const SampledFunction& f) {
  const Grid& g = f.grid;
  os << "# heis sampled function\n"
     << "# n " << f.n << "\n"
     << "# lambda " << (f.lambda ? fmt(*f.lambda) : std::string("none")) << "\n"
     << "# dim " << g.dim() << "\n";
  for (int a = 0; a < g.dim(); ++a)
    os << "# axis " << a << " extent " << fmt(g.extent(a)) << " points " << g.points(a) << "\n";
  os << "# columns";
  for (int a = 0; a < g.dim(); ++a) os << " x" << a;
  os << " re im\n";
  std::vector<double> p(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, p.data());
    for (double c : p) os << fmt(c) << ' ';
    os << fmt(f.values[i].real()) << ' ' << fmt(f.values[i].imag()) << '\n';
  }
  if (!os) throw std::runtime_error("write_sampled: stream failure");
}

SampledFunction read_sampled(std::istream& is) {
  std::string line;
  int n = 1, dim = -1;
  std::optional<double> lambda;
  std::vector<double> extents;
  std::vector<int> points;
  while (is.peek() == '#' && std::getline(is, line)) {
    std::istringstream ls(line.substr(1));
    std::string key;
    ls >> key;
    if (key == "n") {
      ls >> n;
    } else if (key == "lambda") {
      std::string v;
      ls >> v;
      if (v != "none") lambda = parse_double(v);
    } else if (key == "dim") {
      ls >> dim;
    } else if (key == "axis") {
      int a, p;
      std::string k1, e, k2;
      ls >> a >> k1 >> e >> k2 >> p;
      if (k1 != "extent" || k2 != "points" || a != static_cast<int>(extents.size()))
        throw std::runtime_error("sampled file: malformed axis line");
      extents.push_back(parse_double(e));
      points.push_back(p);
    }
  }
  if (dim < 1 || static_cast<int>(extents.size()) != dim)
    throw std::runtime_error("sampled file: missing grid header");
  Grid g(extents, points);
  std::vector<Complex> values(g.size());
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.point(i, p.data());
    for (int a = 0; a < dim; ++a) {
      std::string s;
      if (!(is >> s)) throw std::runtime_error("sampled file: truncated data");
      if (std::abs(parse_double(s) - p[a]) > 1e-9 * (1.0 + std::abs(p[a])))
        throw std::runtime_error("sampled file: coordinates do not match the grid header");
    }
    std::string re, im;
    if (!(is >> re >> im)) throw std::runtime_error("sampled file: truncated data");
    values[i] = Complex(parse_double(re), parse_double(im));
  }
  return SampledFunction(std::move(g), std::move(values), n, lambda);
}

void write_coefficients(std::ostream& os, const SpectralCoefficients& c) {
  bool log_scale = false;
  for (double l : c.log_values)
    if (std::isfinite(l) && std::abs(l) > 700.0) log_scale = true;
  os << "# heis spectral coefficients\n"
     << "# meaning " << (c.meaning == SpectralCoefficients::Meaning::Norms ? "norms" : "weights") << "\n"
     << "# scale " << (log_scale ? "log" : "linear") << "\n";
  for (std::size_t k = 0; k < c.size(); ++k)
    os << k << ' ' << fmt(log_scale ? c.log_values[k] : c.value(k)) << '\n';
  if (!os) throw std::runtime_error("write_coefficients: stream failure");
}

SpectralCoefficients read_coefficients(std::istream& is) {
  std::string line;
  auto meaning = SpectralCoefficients::Meaning::Norms;
  bool log_scale = false;
  while (is.peek() == '#' && std::getline(is, line)) {
    std::istringstream ls(line.substr(1));
    std::string key, v;
    ls >> key >> v;
    if (key == "meaning") {
      if (v == "weights") meaning = SpectralCoefficients::Meaning::Weights;
      else if (v != "norms") throw std::runtime_error("coefficients file: unknown meaning '" + v + "'");
    } else if (key == "scale") {
      if (v == "log") log_scale = true;
      else if (v != "linear") throw std::runtime_error("coefficients file: unknown scale '" + v + "'");
    }
  }
  std::vector<double> logs;
  std::size_t k;
  std::string v;
  while (is >> k >> v) {
    if (k != logs.size()) throw std::runtime_error("coefficients file: indices must be 0,1,2,...");
    const double x = parse_double(v);
    if (!log_scale && x < 0.0) throw std::runtime_error("coefficients file: negative value");
    logs.push_back(log_scale ? x : (x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(x)));
  }
  return SpectralCoefficients::from_log(meaning, std::move(logs));
}

void write_profile_csv(std::ostream& os, const FunctionalProfile& p) {
  os << "R,partial,increment,verdict\n";
  const auto inc = p.increments();
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    os << fmt(p.radii[i]) << ',' << fmt(p.partials[i]) << ',' << fmt(inc[i]) << ','
       << to_string(p.verdict) << '\n';
  if (!os) throw std::runtime_error("write_profile_csv: stream failure");
}

void save_text(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << contents;
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string load_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace heis
