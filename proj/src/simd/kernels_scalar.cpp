#include "kernels_impl.hpp"

#include <cmath>

namespace wco::simd::detail {

void add_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                double* outr, double* outi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    outr[i] = ar[i] + br[i];
    outi[i] = ai[i] + bi[i];
  }
}

void sub_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                double* outr, double* outi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    outr[i] = ar[i] - br[i];
    outi[i] = ai[i] - bi[i];
  }
}

void mul_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                double* outr, double* outi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = ar[i], xi = ai[i], yr = br[i], yi = bi[i];
    outr[i] = xr * yr - xi * yi;
    outi[i] = xr * yi + xi * yr;
  }
}

void div_scalar(const double* ar, const double* ai, const double* br, const double* bi,
                double* outr, double* outi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = ar[i], xi = ai[i], yr = br[i], yi = bi[i];
    const double den = yr * yr + yi * yi;
    outr[i] = (xr * yr + xi * yi) / den;
    outi[i] = (xi * yr - xr * yi) / den;
  }
}

void modulus_scalar(const double* re, const double* im, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

void one_minus_abs2_scalar(const double* re, const double* im, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::sqrt(re[i] * re[i] + im[i] * im[i]);
    out[i] = (1.0 - r) * (1.0 + r);
  }
}

MaxResult weighted_abs_max_scalar(const double* re, const double* im, const double* weight,
                                  std::size_t n) {
  MaxResult best;
  if (n == 0) return best;
  best.value = std::sqrt(re[0] * re[0] + im[0] * im[0]) * weight[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double v = std::sqrt(re[i] * re[i] + im[i] * im[i]) * weight[i];
    if (v > best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

}  // namespace wco::simd::detail
