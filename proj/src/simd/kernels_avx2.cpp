// AVX2 variants of the reference kernels. Compiled with -mavx2 only; the
// dispatcher calls into this file after checking CPU support.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace wco::simd::detail {

namespace {
constexpr std::size_t kLanes = 4;
}

void add_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              double* outr, double* outi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(outr + i, _mm256_add_pd(_mm256_loadu_pd(ar + i), _mm256_loadu_pd(br + i)));
    _mm256_storeu_pd(outi + i, _mm256_add_pd(_mm256_loadu_pd(ai + i), _mm256_loadu_pd(bi + i)));
  }
  add_scalar(ar + i, ai + i, br + i, bi + i, outr + i, outi + i, n - i);
}

void sub_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              double* outr, double* outi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(outr + i, _mm256_sub_pd(_mm256_loadu_pd(ar + i), _mm256_loadu_pd(br + i)));
    _mm256_storeu_pd(outi + i, _mm256_sub_pd(_mm256_loadu_pd(ai + i), _mm256_loadu_pd(bi + i)));
  }
  sub_scalar(ar + i, ai + i, br + i, bi + i, outr + i, outi + i, n - i);
}

void mul_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              double* outr, double* outi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    _mm256_storeu_pd(outr + i, _mm256_sub_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi)));
    _mm256_storeu_pd(outi + i, _mm256_add_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr)));
  }
  mul_scalar(ar + i, ai + i, br + i, bi + i, outr + i, outi + i, n - i);
}

void div_avx2(const double* ar, const double* ai, const double* br, const double* bi,
              double* outr, double* outi, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xr = _mm256_loadu_pd(ar + i);
    const __m256d xi = _mm256_loadu_pd(ai + i);
    const __m256d yr = _mm256_loadu_pd(br + i);
    const __m256d yi = _mm256_loadu_pd(bi + i);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(yr, yr), _mm256_mul_pd(yi, yi));
    const __m256d nr = _mm256_add_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
    const __m256d ni = _mm256_sub_pd(_mm256_mul_pd(xi, yr), _mm256_mul_pd(xr, yi));
    _mm256_storeu_pd(outr + i, _mm256_div_pd(nr, den));
    _mm256_storeu_pd(outi + i, _mm256_div_pd(ni, den));
  }
  div_scalar(ar + i, ai + i, br + i, bi + i, outr + i, outi + i, n - i);
}

namespace {
inline __m256d modulus4(const double* re, const double* im) {
  const __m256d r = _mm256_loadu_pd(re);
  const __m256d m = _mm256_loadu_pd(im);
  return _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
}
}  // namespace

void modulus_avx2(const double* re, const double* im, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, modulus4(re + i, im + i));
  modulus_scalar(re + i, im + i, out + i, n - i);
}

void one_minus_abs2_avx2(const double* re, const double* im, double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = modulus4(re + i, im + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(one, r), _mm256_add_pd(one, r)));
  }
  one_minus_abs2_scalar(re + i, im + i, out + i, n - i);
}

MaxResult weighted_abs_max_avx2(const double* re, const double* im, const double* weight,
                                std::size_t n) {
  if (n < kLanes) return weighted_abs_max_scalar(re, im, weight, n);

  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_mul_pd(modulus4(re + i, im + i), _mm256_loadu_pd(weight + i));
    const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, v, gt);
    best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    idx = _mm256_add_pd(idx, step);
  }

  alignas(32) double vals[kLanes];
  alignas(32) double idxs[kLanes];
  _mm256_store_pd(vals, best);
  _mm256_store_pd(idxs, best_idx);
  MaxResult out{vals[0], static_cast<std::size_t>(idxs[0])};
  for (std::size_t l = 1; l < kLanes; ++l) {
    const auto li = static_cast<std::size_t>(idxs[l]);
    if (vals[l] > out.value || (vals[l] == out.value && li < out.index)) {
      out.value = vals[l];
      out.index = li;
    }
  }
  for (; i < n; ++i) {
    const double v = std::sqrt(re[i] * re[i] + im[i] * im[i]) * weight[i];
    if (v > out.value) {
      out.value = v;
      out.index = i;
    }
  }
  return out;
}

}  // namespace wco::simd::detail
