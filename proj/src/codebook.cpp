#include "ssc/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssc::codebook {

namespace {

constexpr double kPi = std::numbers::pi;

// (a * b) mod n without overflow for any int64 operands in [0, n).
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(
      (static_cast<__int128>(a) * static_cast<__int128>(b)) % n);
}

}  // namespace

cdouble grid_alpha(std::int64_t n, std::int64_t n_grid) {
  if (n_grid < 1) throw std::domain_error("grid_alpha: N must be >= 1");
  if (n < 1 || n > n_grid)
    throw std::domain_error("grid_alpha: index must be in [1, N]");
  const double sin_theta =
      -1.0 + 2.0 * static_cast<double>(n - 1) / static_cast<double>(n_grid);
  return std::polar(1.0, kPi * sin_theta);
}

Codebook::Codebook(rulers::Ruler r) : ruler_(std::move(r)) {
  // Re-validate so a hand-assembled Ruler cannot bypass the invariants.
  ruler_ = rulers::make_ruler(std::move(ruler_.positions), ruler_.modulus,
                              ruler_.kind, ruler_.q);
  m_ = static_cast<std::int64_t>(ruler_.size());
  n_ = ruler_.modulus;

  roots_.resize(n_);
  for (std::int64_t j = 0; j < n_; ++j)
    roots_[j] = std::polar(1.0, 2.0 * kPi * static_cast<double>(j) /
                                    static_cast<double>(n_));

  // Entry (m, n): alpha_n^{d_m} = (-1)^{d_m} * roots[(n * d_m) mod N].
  re_.resize(static_cast<std::size_t>(m_) * n_);
  im_.resize(static_cast<std::size_t>(m_) * n_);
  for (std::int64_t m = 0; m < m_; ++m) {
    const std::int64_t d = ruler_.positions[m];
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    double* row_re = re_.data() + m * n_;
    double* row_im = im_.data() + m * n_;
    for (std::int64_t n = 0; n < n_; ++n) {
      const cdouble v = roots_[mulmod(n, d, n_)];
      row_re[n] = sign * v.real();
      row_im[n] = sign * v.imag();
    }
  }
}

cdouble Codebook::alpha(std::int64_t idx) const {
  if (idx < 0 || idx >= n_)
    throw std::domain_error("alpha: codeword index out of range");
  return -roots_[idx];
}

std::vector<cdouble> Codebook::codeword(std::int64_t idx) const {
  if (idx < 0 || idx >= n_)
    throw std::domain_error("codeword: index out of range");
  std::vector<cdouble> c(m_);
  for (std::int64_t m = 0; m < m_; ++m)
    c[m] = cdouble(re_[m * n_ + idx], im_[m * n_ + idx]);
  return c;
}

double principal_angle_distance(std::span<const cdouble> u,
                                std::span<const cdouble> v) {
  if (u.size() != v.size() || u.empty())
    throw std::domain_error("principal_angle_distance: mismatched vectors");
  double uu = 0.0, vv = 0.0;
  cdouble uv{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += std::norm(u[i]);
    vv += std::norm(v[i]);
    uv += std::conj(u[i]) * v[i];
  }
  if (uu == 0.0 || vv == 0.0)
    throw std::domain_error("principal_angle_distance: zero vector");
  const double d = 1.0 - std::norm(uv) / (uu * vv);
  return std::clamp(d, 0.0, 1.0);
}

double subspace_distance(const Codebook& cb, std::int64_t idx1,
                         std::int64_t idx2) {
  const std::int64_t n = cb.size();
  if (idx1 < 0 || idx1 >= n || idx2 < 0 || idx2 >= n)
    throw std::domain_error("subspace_distance: index out of range");
  const std::int64_t k = (((idx2 - idx1) % n) + n) % n;
  if (k == 0) return 0.0;
  cdouble s{0.0, 0.0};
  for (std::int64_t d : cb.ruler().positions) s += cb.roots()[mulmod(k, d, n)];
  const double m = static_cast<double>(cb.sensors());
  return std::clamp(1.0 - std::norm(s) / (m * m), 0.0, 1.0);
}

std::vector<double> beampattern(const Codebook& cb) {
  const std::int64_t n = cb.size();
  std::vector<double> b(n);
  for (std::int64_t k = 0; k < n; ++k) {
    cdouble s{0.0, 0.0};
    for (std::int64_t d : cb.ruler().positions)
      s += cb.roots()[mulmod(k, d, n)];
    b[k] = std::norm(s);
  }
  return b;
}

DistanceReport min_distance(const Codebook& cb) {
  const std::int64_t n = cb.size();
  if (n < 2)
    throw std::domain_error("min_distance: need at least two codewords");
  const std::vector<double> b = beampattern(cb);

  double max_off = b[1];
  for (std::int64_t k = 2; k < n; ++k) max_off = std::max(max_off, b[k]);
  // Report the smallest lag within 1e-12 relative of the maximum, so ties
  // produced by symmetric beampatterns resolve deterministically.
  const double tol = 1e-12 * max_off;
  std::int64_t lag = 1;
  for (std::int64_t k = 1; k < n; ++k) {
    if (b[k] >= max_off - tol) {
      lag = k;
      break;
    }
  }

  const double m = static_cast<double>(cb.sensors());
  DistanceReport rep;
  rep.dmin = std::clamp(1.0 - max_off / (m * m), 0.0, 1.0);
  rep.argmin_lag = lag;
  rep.argmin_pair = {1, 1 + lag};
  rep.max_offpeak = max_off;
  if (n > cb.sensors()) rep.welch = welch_upper_bound(n, cb.sensors());
  switch (cb.ruler().kind) {
    case rulers::Kind::bose_chowla:
      rep.construction_bound = bc_distance_bound(cb.sensors());
      break;
    case rulers::Kind::ula:
      rep.construction_bound = ula_distance_bound();
      break;
    case rulers::Kind::custom:
      break;
  }
  return rep;
}

double bc_distance_bound(std::int64_t m_sensors) {
  if (m_sensors < 1) throw std::domain_error("bc_distance_bound: M must be >= 1");
  return 1.0 - 2.0 / static_cast<double>(m_sensors);
}

double ula_distance_bound() noexcept { return 1.0 - 4.0 / (kPi * kPi); }

double welch_upper_bound(std::int64_t n_codewords, std::int64_t m_sensors) {
  if (m_sensors < 1)
    throw std::domain_error("welch_upper_bound: M must be >= 1");
  if (n_codewords <= m_sensors)
    throw std::domain_error("welch_upper_bound: requires N > M");
  const double n = static_cast<double>(n_codewords);
  const double m = static_cast<double>(m_sensors);
  return 1.0 - (n - m) / (m * (n - 1.0));
}

double pe_upper_bound(std::int64_t m_sensors, std::int64_t n_codewords,
                      double sigma, double dmin) {
  if (m_sensors < 1 || n_codewords < 1)
    throw std::domain_error("pe_upper_bound: M and N must be >= 1");
  if (!(sigma >= 0.0))
    throw std::domain_error("pe_upper_bound: sigma must be >= 0");
  if (!(dmin >= 0.0 && dmin <= 1.0))
    throw std::domain_error("pe_upper_bound: dmin must be in [0, 1]");
  if (sigma == 0.0) return dmin > 0.0 ? 0.0 : 1.0;
  const double m = static_cast<double>(m_sensors);
  const double gap = 1.0 - std::sqrt(1.0 - dmin);
  const double exponent = -(m / (4.0 * sigma * sigma)) * gap * gap +
                          std::log(static_cast<double>(n_codewords));
  return std::min(1.0, std::exp(exponent));
}

}  // namespace ssc::codebook
