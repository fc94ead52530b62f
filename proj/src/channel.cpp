#include "ssc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ssc/kernels.hpp"
#include "ssc/rng.hpp"

namespace ssc::channel {

namespace {

void check_config(const ChannelConfig& cfg) {
  if (std::abs(std::abs(cfg.source) - 1.0) > 1e-9)
    throw std::domain_error("channel: source must have unit modulus");
  if (!(cfg.sigma >= 0.0))
    throw std::domain_error("channel: sigma must be >= 0");
}

}  // namespace

cdouble source_from_phase_deg(double deg) {
  return std::polar(1.0, deg * std::numbers::pi / 180.0);
}

double snr_to_sigma(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

void synthesize_planar(const codebook::Codebook& cb, std::int64_t n,
                       const ChannelConfig& cfg, std::uint64_t trial,
                       double* y_re, double* y_im) {
  check_config(cfg);
  if (n < 0 || n >= cb.size())
    throw std::domain_error("synthesize: grid index out of range");

  const std::int64_t big_n = cb.size();
  const std::int64_t m_sensors = cb.sensors();
  const double xr = cfg.source.real();
  const double xi = cfg.source.imag();
  const double scale = cfg.sigma / std::numbers::sqrt2;

  rng::Stream noise(rng::derive(cfg.seed, trial, 1));
  const double* cre = cb.planar_re();
  const double* cim = cb.planar_im();
  for (std::int64_t m = 0; m < m_sensors; ++m) {
    const double cr = cre[m * big_n + n];
    const double ci = cim[m * big_n + n];
    double g1, g2;
    noise.normal_pair(g1, g2);
    y_re[m] = xr * cr - xi * ci + scale * g1;
    y_im[m] = xr * ci + xi * cr + scale * g2;
  }
}

Observation synthesize(const codebook::Codebook& cb, std::int64_t n,
                       const ChannelConfig& cfg, std::uint64_t trial) {
  std::vector<double> re(cb.sensors()), im(cb.sensors());
  synthesize_planar(cb, n, cfg, trial, re.data(), im.data());
  Observation obs;
  obs.true_index = n;
  obs.y.resize(cb.sensors());
  for (std::int64_t m = 0; m < cb.sensors(); ++m)
    obs.y[m] = cdouble(re[m], im[m]);
  return obs;
}

std::vector<double> matched_filter_scores(const codebook::Codebook& cb,
                                          std::span<const cdouble> y) {
  if (static_cast<std::int64_t>(y.size()) != cb.sensors())
    throw std::domain_error("matched_filter_scores: observation length != M");
  const std::int64_t m_sensors = cb.sensors();
  std::vector<double> yre(m_sensors), yim(m_sensors);
  for (std::int64_t m = 0; m < m_sensors; ++m) {
    yre[m] = y[m].real();
    yim[m] = y[m].imag();
  }
  std::vector<double> scores(cb.size());
  kernels::matched_filter_sq(yre.data(), yim.data(), m_sensors,
                             cb.planar_re(), cb.planar_im(), cb.size(),
                             scores.data());
  for (double& s : scores) s = std::sqrt(s);
  return scores;
}

std::int64_t decode_planar(const codebook::Codebook& cb, const double* y_re,
                           const double* y_im, double* scores_sq) {
  kernels::matched_filter_sq(y_re, y_im, cb.sensors(), cb.planar_re(),
                             cb.planar_im(), cb.size(), scores_sq);
  return static_cast<std::int64_t>(kernels::argmax(scores_sq, cb.size()));
}

std::int64_t decode(const codebook::Codebook& cb, std::span<const cdouble> y) {
  if (static_cast<std::int64_t>(y.size()) != cb.sensors())
    throw std::domain_error("decode: observation length != M");
  const std::int64_t m_sensors = cb.sensors();
  std::vector<double> yre(m_sensors), yim(m_sensors);
  for (std::int64_t m = 0; m < m_sensors; ++m) {
    yre[m] = y[m].real();
    yim[m] = y[m].imag();
  }
  std::vector<double> scores(cb.size());
  return decode_planar(cb, yre.data(), yim.data(), scores.data());
}

}  // namespace ssc::channel
