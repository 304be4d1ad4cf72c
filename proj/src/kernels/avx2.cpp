// Compiled with -mavx2 -mfma; only called after a CPUID check.

#include "pspankit/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace pspankit::kernels::avx2 {

namespace {

// Same fused chain as the vector lanes, so a point's value never depends on
// whether it landed in a full block or the tail.
inline double fused_column(const PanelView& panel, const double* u, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < panel.rows; ++i) s = std::fma(panel.data[i * panel.stride + j], u[i], s);
  return s;
}

}  // namespace

void project(const PanelView& panel, const double* u, double* out) {
  const std::size_t full = panel.cols & ~std::size_t{3};
  std::size_t j = 0;
  for (; j < full; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < panel.rows; ++i) {
      const __m256d x = _mm256_loadu_pd(panel.data + i * panel.stride + j);
      acc = _mm256_fmadd_pd(x, _mm256_broadcast_sd(u + i), acc);
    }
    _mm256_storeu_pd(out + j, acc);
  }
  for (; j < panel.cols; ++j) out[j] = fused_column(panel, u, j);
}

ArgMax max_project(const PanelView& panel, const double* u) {
  const std::size_t full = panel.cols & ~std::size_t{3};
  ArgMax best{0.0, 0};
  bool have = false;
  alignas(32) double lanes[4];
  std::size_t j = 0;
  for (; j < full; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < panel.rows; ++i) {
      const __m256d x = _mm256_loadu_pd(panel.data + i * panel.stride + j);
      acc = _mm256_fmadd_pd(x, _mm256_broadcast_sd(u + i), acc);
    }
    _mm256_store_pd(lanes, acc);
    for (std::size_t l = 0; l < 4; ++l) {
      if (!have || lanes[l] > best.value) {
        best = {lanes[l], j + l};
        have = true;
      }
    }
  }
  for (; j < panel.cols; ++j) {
    const double s = fused_column(panel, u, j);
    if (!have || s > best.value) {
      best = {s, j};
      have = true;
    }
  }
  return best;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s = std::fma(a[i], b[i], s);
  return s;
}

}  // namespace pspankit::kernels::avx2
