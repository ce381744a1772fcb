#pragma once

#include <iosfwd>
#include <string>

#include "heis/bergman.hpp"
#include "heis/quad.hpp"
#include "heis/uncertainty.hpp"
#include "heis/weyl.hpp"

namespace heis {

/// Text operator format:
///   HEISOP 1
///   n <int>
///   lambda <double>
///   K <int>
///   dim <int>
///   dim rows of 2·dim numbers (re im pairs), 17 significant digits.
void write_operator_text(std::ostream& os, const OperatorMatrix& T);
OperatorMatrix read_operator_text(std::istream& is);

/// Binary operator format (little endian): 8-byte magic "HEISOPB1", int32 n,
/// float64 lambda, int32 K, uint64 dim, then dim² (re, im) float64 pairs in
/// row-major order.
void write_operator_binary(std::ostream& os, const OperatorMatrix& T);
OperatorMatrix read_operator_binary(std::istream& is);

/// Columnar sampled function: '#' header lines (n, lambda, per-axis extent and
/// points), then one row per grid point: coordinates, real part, imaginary part.
void write_sampled(std::ostream& os, const SampledFunction& f);
SampledFunction read_sampled(std::istream& is);

/// Two-column coefficients "k value" after a header giving the meaning and
/// the scale (linear, or log when values leave double range).
void write_coefficients(std::ostream& os, const SpectralCoefficients& c);
SpectralCoefficients read_coefficients(std::istream& is);

/// CSV with header R,partial,increment,verdict.
void write_profile_csv(std::ostream& os, const FunctionalProfile& p);

/// Convenience wrappers that open the file and throw std::runtime_error on I/O failure.
void save_text(const std::string& path, const std::string& contents);
std::string load_text(const std::string& path);

}  // namespace heis
