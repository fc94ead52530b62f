#pragma once

// Subspace codebooks on the unit-modulus steering grid.  Codeword n
// (0-based) is the line spanned by c_n = (alpha_n^{d_1}, ..., alpha_n^{d_M})
// with alpha_n = -exp(i 2 pi n / N) and d_m the ruler positions.  All
// codeword entries come from an exact table of N-th roots of unity, so
// distances and beampatterns carry no power-accumulation rounding.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssc/rulers.hpp"

namespace ssc::codebook {

using cdouble = std::complex<double>;

// Steering scalar of grid direction n (1-based):
// alpha_n = exp(i pi sin(theta_n)), sin(theta_n) = -1 + 2(n-1)/N.
// Throws std::domain_error for n outside [1, N].
cdouble grid_alpha(std::int64_t n, std::int64_t n_grid);

class Codebook {
 public:
  explicit Codebook(rulers::Ruler r);

  const rulers::Ruler& ruler() const noexcept { return ruler_; }
  std::int64_t size() const noexcept { return n_; }     // codewords N
  std::int64_t sensors() const noexcept { return m_; }  // sensors M

  // Steering scalar of codeword idx (0-based), equal to -roots()[idx].
  cdouble alpha(std::int64_t idx) const;
  // Codeword entries (length M, squared norm exactly M up to rounding).
  std::vector<cdouble> codeword(std::int64_t idx) const;

  // Planar sensor-major storage, entry (m, n) at [m * size() + n]; the
  // layout the matched-filter kernels consume.
  const double* planar_re() const noexcept { return re_.data(); }
  const double* planar_im() const noexcept { return im_.data(); }

  // roots()[j] = exp(i 2 pi j / N).
  const std::vector<cdouble>& roots() const noexcept { return roots_; }

 private:
  rulers::Ruler ruler_;
  std::int64_t m_ = 0, n_ = 0;
  std::vector<cdouble> roots_;
  std::vector<double> re_, im_;
};

inline Codebook build_codebook(rulers::Ruler r) { return Codebook(std::move(r)); }

// d(u, v) = 1 - |<u, v>|^2 / (|u|^2 |v|^2), the squared sine of the
// principal angle between the spanned lines.  Direct evaluation used as a
// cross-check; throws std::domain_error on zero or mismatched vectors.
double principal_angle_distance(std::span<const cdouble> u,
                                std::span<const cdouble> v);

// Subspace distance between codewords idx1, idx2 (0-based).  Depends only
// on the lag (idx2 - idx1) mod N; evaluated through the exact root table.
double subspace_distance(const Codebook& cb, std::int64_t idx1,
                         std::int64_t idx2);

// B[k] = |sum_m omega^{k d_m}|^2, omega = exp(i 2 pi / N), k = 0..N-1.
// B[0] = M^2; subspace distance at lag k is 1 - B[k] / M^2.
std::vector<double> beampattern(const Codebook& cb);

struct DistanceReport {
  double dmin = 0.0;
  // Smallest lag attaining the off-peak maximum within 1e-12 relative.
  std::int64_t argmin_lag = 0;
  // A 1-based grid pair realizing dmin: (1, 1 + argmin_lag).
  std::pair<std::int64_t, std::int64_t> argmin_pair{0, 0};
  double max_offpeak = 0.0;  // max_{k != 0} B[k]
  std::optional<double> welch;               // present when N > M
  std::optional<double> construction_bound;  // absent for custom rulers
};

// Minimum pairwise subspace distance via the beampattern; needs N >= 2.
DistanceReport min_distance(const Codebook& cb);

// Guaranteed lower bound 1 - 2/M on dmin of a Bose-Chowla codebook.
double bc_distance_bound(std::int64_t m_sensors);
// Asymptotic ULA limit 1 - 4/pi^2 (adjacent-direction distance cap).
double ula_distance_bound() noexcept;
// Welch (simplex) upper bound 1 - (N - M) / (M (N - 1)) on the minimum
// distance of N lines in C^M; requires N > M.
double welch_upper_bound(std::int64_t n_codewords, std::int64_t m_sensors);

// Union-bound estimate of the decoder error probability:
// min(1, exp(-(M / (4 sigma^2)) (1 - sqrt(1 - dmin))^2 + ln N)).
double pe_upper_bound(std::int64_t m_sensors, std::int64_t n_codewords,
                      double sigma, double dmin);

}  // namespace ssc::codebook
