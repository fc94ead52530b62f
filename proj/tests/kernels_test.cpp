#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "ssc/kernels.hpp"
#include "ssc/rng.hpp"

using namespace ssc;

namespace {

struct Problem {
  std::size_t m, n;
  std::vector<double> y_re, y_im, c_re, c_im;
};

Problem random_problem(std::size_t m, std::size_t n, std::uint64_t seed) {
  Problem p{m, n, {}, {}, {}, {}};
  rng::Stream s(rng::derive(seed, m, n));
  auto fill = [&](std::vector<double>& v, std::size_t len) {
    v.resize(len);
    for (double& x : v) x = 2.0 * s.uniform01() - 1.0;
  };
  fill(p.y_re, m);
  fill(p.y_im, m);
  fill(p.c_re, m * n);
  fill(p.c_im, m * n);
  return p;
}

// Direct complex-arithmetic evaluation, column by column.
std::vector<double> oracle_scores_sq(const Problem& p) {
  std::vector<double> out(p.n);
  for (std::size_t n = 0; n < p.n; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t m = 0; m < p.m; ++m) {
      const std::complex<double> y{p.y_re[m], p.y_im[m]};
      const std::complex<double> c{p.c_re[m * p.n + n], p.c_im[m * p.n + n]};
      acc += std::conj(y) * c;
    }
    out[n] = std::norm(acc);
  }
  return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(a[i]), std::abs(b[i])));
    CHECK(std::abs(a[i] - b[i]) <= tol);
  }
}

}  // namespace

TEST_CASE("scalar kernel matches complex arithmetic") {
  for (std::size_t m : {1u, 2u, 5u, 19u})
    for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 37u, 360u}) {
      const Problem p = random_problem(m, n, 1234);
      std::vector<double> got(n);
      kernels::matched_filter_sq_scalar(p.y_re.data(), p.y_im.data(), m,
                                        p.c_re.data(), p.c_im.data(), n,
                                        got.data());
      check_close(got, oracle_scores_sq(p));
    }
}

TEST_CASE("scalar kernel is deterministic") {
  const Problem p = random_problem(4, 21, 99);
  std::vector<double> a(p.n), b(p.n);
  kernels::matched_filter_sq_scalar(p.y_re.data(), p.y_im.data(), p.m,
                                    p.c_re.data(), p.c_im.data(), p.n, a.data());
  kernels::matched_filter_sq_scalar(p.y_re.data(), p.y_im.data(), p.m,
                                    p.c_re.data(), p.c_im.data(), p.n, b.data());
  CHECK(std::memcmp(a.data(), b.data(), p.n * sizeof(double)) == 0);
}

TEST_CASE("avx2 kernel agrees with the scalar reference") {
  if (!kernels::supported(kernels::Backend::avx2)) {
    MESSAGE("AVX2 not available here; dispatch falls back to scalar");
    return;
  }
  for (std::size_t m : {1u, 3u, 19u})
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 8u, 9u, 63u, 360u, 361u}) {
      const Problem p = random_problem(m, n, 777);
      std::vector<double> scalar_out(n), avx2_out(n);
      kernels::matched_filter_sq_scalar(p.y_re.data(), p.y_im.data(), m,
                                        p.c_re.data(), p.c_im.data(), n,
                                        scalar_out.data());
      kernels::use(kernels::Backend::avx2);
      kernels::matched_filter_sq(p.y_re.data(), p.y_im.data(), m,
                                 p.c_re.data(), p.c_im.data(), n,
                                 avx2_out.data());
      kernels::use_best();
      check_close(avx2_out, scalar_out);
    }
}

TEST_CASE("backend selection") {
  CHECK(kernels::compiled(kernels::Backend::scalar));
  CHECK(kernels::supported(kernels::Backend::scalar));
  CHECK(kernels::supported(kernels::active()));

  kernels::use(kernels::Backend::scalar);
  CHECK(kernels::active() == kernels::Backend::scalar);

  // Dispatcher in scalar mode reproduces the reference exactly.
  const Problem p = random_problem(3, 17, 5);
  std::vector<double> a(p.n), b(p.n);
  kernels::matched_filter_sq(p.y_re.data(), p.y_im.data(), p.m, p.c_re.data(),
                             p.c_im.data(), p.n, a.data());
  kernels::matched_filter_sq_scalar(p.y_re.data(), p.y_im.data(), p.m,
                                    p.c_re.data(), p.c_im.data(), p.n,
                                    b.data());
  CHECK(std::memcmp(a.data(), b.data(), p.n * sizeof(double)) == 0);

  kernels::use_best();
  if (!kernels::supported(kernels::Backend::avx2))
    CHECK_THROWS_AS(kernels::use(kernels::Backend::avx2), std::domain_error);
  else
    CHECK(kernels::active() == kernels::Backend::avx2);
}

TEST_CASE("argmax picks the first maximum") {
  const double v1[] = {3.0};
  CHECK(kernels::argmax(v1, 1) == 0);
  const double v2[] = {1.0, 5.0, 2.0};
  CHECK(kernels::argmax(v2, 3) == 1);
  const double v3[] = {1.0, 7.0, 7.0, 3.0};
  CHECK(kernels::argmax(v3, 4) == 1);
  const double v4[] = {-2.0, -1.0, -1.0};
  CHECK(kernels::argmax(v4, 3) == 1);
}
