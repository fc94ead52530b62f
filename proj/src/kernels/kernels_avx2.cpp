// AVX2 + FMA matched-filter kernel.  Compiled only on x86-64 (see
// src/CMakeLists.txt) and dispatched at runtime after a CPU feature
// check, so the binary stays runnable on pre-AVX2 machines.

#include <immintrin.h>

#include <cstddef>
#include <vector>

namespace ssc::kernels {

namespace {

std::vector<double>& avx2_scratch(std::size_t n) {
  thread_local std::vector<double> buf;
  if (buf.size() < 2 * n) buf.resize(2 * n);
  return buf;
}

}  // namespace

void matched_filter_sq_avx2(const double* y_re, const double* y_im,
                            std::size_t m_sensors, const double* c_re,
                            const double* c_im, std::size_t n_codewords,
                            double* scores_sq) {
  std::vector<double>& buf = avx2_scratch(n_codewords);
  double* acc_re = buf.data();
  double* acc_im = buf.data() + n_codewords;

  const std::size_t n4 = n_codewords & ~std::size_t{3};
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t n = 0; n < n4; n += 4) {
    _mm256_storeu_pd(acc_re + n, zero);
    _mm256_storeu_pd(acc_im + n, zero);
  }
  for (std::size_t n = n4; n < n_codewords; ++n) {
    acc_re[n] = 0.0;
    acc_im[n] = 0.0;
  }

  for (std::size_t m = 0; m < m_sensors; ++m) {
    const __m256d yr = _mm256_set1_pd(y_re[m]);
    const __m256d yi = _mm256_set1_pd(y_im[m]);
    const double* cr = c_re + m * n_codewords;
    const double* ci = c_im + m * n_codewords;
    for (std::size_t n = 0; n < n4; n += 4) {
      const __m256d vcr = _mm256_loadu_pd(cr + n);
      const __m256d vci = _mm256_loadu_pd(ci + n);
      __m256d ar = _mm256_loadu_pd(acc_re + n);
      __m256d ai = _mm256_loadu_pd(acc_im + n);
      ar = _mm256_fmadd_pd(yr, vcr, ar);
      ar = _mm256_fmadd_pd(yi, vci, ar);
      ai = _mm256_fmadd_pd(yr, vci, ai);
      ai = _mm256_fnmadd_pd(yi, vcr, ai);
      _mm256_storeu_pd(acc_re + n, ar);
      _mm256_storeu_pd(acc_im + n, ai);
    }
    const double yrs = y_re[m];
    const double yis = y_im[m];
    for (std::size_t n = n4; n < n_codewords; ++n) {
      acc_re[n] += yrs * cr[n] + yis * ci[n];
      acc_im[n] += yrs * ci[n] - yis * cr[n];
    }
  }

  for (std::size_t n = 0; n < n4; n += 4) {
    const __m256d ar = _mm256_loadu_pd(acc_re + n);
    const __m256d ai = _mm256_loadu_pd(acc_im + n);
    const __m256d sq = _mm256_fmadd_pd(ai, ai, _mm256_mul_pd(ar, ar));
    _mm256_storeu_pd(scores_sq + n, sq);
  }
  for (std::size_t n = n4; n < n_codewords; ++n)
    scores_sq[n] = acc_re[n] * acc_re[n] + acc_im[n] * acc_im[n];
}

}  // namespace ssc::kernels
