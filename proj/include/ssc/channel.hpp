#pragma once

// Single-snapshot observation model and the matched-filter decoder.
// y = x * c_n + w with a unit-modulus source x and circularly symmetric
// complex Gaussian noise of per-entry variance sigma^2.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ssc/codebook.hpp"

namespace ssc::channel {

using cdouble = std::complex<double>;

inline constexpr double default_source_phase_deg = 45.0;

// Unit-modulus source exp(i * deg * pi / 180).
cdouble source_from_phase_deg(double deg);

// sigma = 10^(-snr_db / 20), so SNR(dB) = -20 log10(sigma).
double snr_to_sigma(double snr_db);

struct ChannelConfig {
  cdouble source = source_from_phase_deg(default_source_phase_deg);
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

struct Observation {
  std::vector<cdouble> y;
  std::int64_t true_index = 0;  // 0-based grid index
};

// Synthesizes y = x * c_n + w.  Noise entries are (g1 + i g2) * sigma /
// sqrt(2) with g1, g2 standard normal drawn, sensor by sensor, from the
// stream derived from (seed, trial, purpose=1).  Requires |source| = 1
// within 1e-9 and sigma >= 0.
Observation synthesize(const codebook::Codebook& cb, std::int64_t n,
                       const ChannelConfig& cfg, std::uint64_t trial);

// Matched-filter scores |y^H c_gamma| for every grid codeword.
std::vector<double> matched_filter_scores(const codebook::Codebook& cb,
                                          std::span<const cdouble> y);

// Minimum-distance decoding: the grid index maximizing the matched-filter
// score, smallest index on ties.
std::int64_t decode(const codebook::Codebook& cb, std::span<const cdouble> y);

// Planar variants used by the simulation hot loop: y_re/y_im hold M
// doubles, scores_sq holds N doubles of scratch.
void synthesize_planar(const codebook::Codebook& cb, std::int64_t n,
                       const ChannelConfig& cfg, std::uint64_t trial,
                       double* y_re, double* y_im);
std::int64_t decode_planar(const codebook::Codebook& cb, const double* y_re,
                           const double* y_im, double* scores_sq);

}  // namespace ssc::channel
