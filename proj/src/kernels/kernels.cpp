#include "ssc/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <vector>

namespace ssc::kernels {

#if SSC_KERNELS_AVX2_TU
// Defined in kernels_avx2.cpp, compiled with -mavx2 -mfma.
void matched_filter_sq_avx2(const double* y_re, const double* y_im,
                            std::size_t m_sensors, const double* c_re,
                            const double* c_im, std::size_t n_codewords,
                            double* scores_sq);
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if SSC_KERNELS_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Backend>& backend_slot() noexcept {
  static std::atomic<Backend> slot{cpu_has_avx2() ? Backend::avx2
                                                  : Backend::scalar};
  return slot;
}

// Per-thread accumulator scratch; sized to 2 * n_codewords on first use.
std::vector<double>& scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  if (buf.size() < 2 * n) buf.resize(2 * n);
  return buf;
}

}  // namespace

bool compiled(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if SSC_KERNELS_AVX2_TU
      return true;
#else
      return false;
#endif
  }
  return false;
}

bool supported(Backend b) noexcept {
  if (!compiled(b)) return false;
  return b != Backend::avx2 || cpu_has_avx2();
}

Backend active() noexcept { return backend_slot().load(std::memory_order_relaxed); }

void use(Backend b) {
  if (!supported(b))
    throw std::domain_error("kernel backend not supported on this machine");
  backend_slot().store(b, std::memory_order_relaxed);
}

void use_best() noexcept {
  backend_slot().store(cpu_has_avx2() ? Backend::avx2 : Backend::scalar,
                       std::memory_order_relaxed);
}

void matched_filter_sq_scalar(const double* y_re, const double* y_im,
                              std::size_t m_sensors, const double* c_re,
                              const double* c_im, std::size_t n_codewords,
                              double* scores_sq) {
  std::vector<double>& buf = scratch(n_codewords);
  double* acc_re = buf.data();
  double* acc_im = buf.data() + n_codewords;
  for (std::size_t n = 0; n < n_codewords; ++n) {
    acc_re[n] = 0.0;
    acc_im[n] = 0.0;
  }
  // conj(y_m) * C[m][n], accumulated row by row so the codeword matrix is
  // streamed once in layout order.
  for (std::size_t m = 0; m < m_sensors; ++m) {
    const double yr = y_re[m];
    const double yi = y_im[m];
    const double* cr = c_re + m * n_codewords;
    const double* ci = c_im + m * n_codewords;
    for (std::size_t n = 0; n < n_codewords; ++n) {
      acc_re[n] += yr * cr[n] + yi * ci[n];
      acc_im[n] += yr * ci[n] - yi * cr[n];
    }
  }
  for (std::size_t n = 0; n < n_codewords; ++n)
    scores_sq[n] = acc_re[n] * acc_re[n] + acc_im[n] * acc_im[n];
}

void matched_filter_sq(const double* y_re, const double* y_im,
                       std::size_t m_sensors, const double* c_re,
                       const double* c_im, std::size_t n_codewords,
                       double* scores_sq) {
#if SSC_KERNELS_AVX2_TU
  if (active() == Backend::avx2) {
    matched_filter_sq_avx2(y_re, y_im, m_sensors, c_re, c_im, n_codewords,
                           scores_sq);
    return;
  }
#endif
  matched_filter_sq_scalar(y_re, y_im, m_sensors, c_re, c_im, n_codewords,
                           scores_sq);
}

std::size_t argmax(const double* v, std::size_t n) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace ssc::kernels
