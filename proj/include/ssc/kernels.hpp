#pragma once

// Matched-filter compute kernels.  A scalar reference implementation is
// always available; an AVX2 variant is compiled on x86-64 and selected at
// runtime when the CPU supports it.  Both produce squared magnitudes that
// agree within floating-point reassociation tolerance (the AVX2 path uses
// FMA), so argmax decisions are validated against the scalar path in
// tests rather than assumed bit-identical.

#include <cstddef>

namespace ssc::kernels {

enum class Backend { scalar, avx2 };

// Whether the backend exists in this binary.
bool compiled(Backend b) noexcept;
// Whether the backend exists and the running CPU can execute it.
bool supported(Backend b) noexcept;

Backend active() noexcept;
// Selects a backend; throws std::domain_error when unsupported.
void use(Backend b);
// Restores the default: the fastest supported backend.
void use_best() noexcept;

// scores_sq[n] = |sum_m conj(y[m]) * C[m][n]|^2 for the planar
// sensor-major codeword matrix C with rows of length n_codewords:
// C[m][n] = c_re[m * n_codewords + n] + i * c_im[m * n_codewords + n].
void matched_filter_sq(const double* y_re, const double* y_im,
                       std::size_t m_sensors, const double* c_re,
                       const double* c_im, std::size_t n_codewords,
                       double* scores_sq);

// Reference implementation, independent of the active backend.
void matched_filter_sq_scalar(const double* y_re, const double* y_im,
                              std::size_t m_sensors, const double* c_re,
                              const double* c_im, std::size_t n_codewords,
                              double* scores_sq);

// Index of the maximum value; smallest index on exact ties.  n >= 1.
std::size_t argmax(const double* v, std::size_t n) noexcept;

}  // namespace ssc::kernels
