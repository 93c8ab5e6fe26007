#pragma once

#include "wco/simd/kernels.hpp"

namespace wco::simd::detail {

void add_scalar(const double*, const double*, const double*, const double*, double*, double*,
                std::size_t);
void sub_scalar(const double*, const double*, const double*, const double*, double*, double*,
                std::size_t);
void mul_scalar(const double*, const double*, const double*, const double*, double*, double*,
                std::size_t);
void div_scalar(const double*, const double*, const double*, const double*, double*, double*,
                std::size_t);
void modulus_scalar(const double*, const double*, double*, std::size_t);
void one_minus_abs2_scalar(const double*, const double*, double*, std::size_t);
MaxResult weighted_abs_max_scalar(const double*, const double*, const double*, std::size_t);

#if defined(WCO_HAVE_AVX2)
void add_avx2(const double*, const double*, const double*, const double*, double*, double*,
              std::size_t);
void sub_avx2(const double*, const double*, const double*, const double*, double*, double*,
              std::size_t);
void mul_avx2(const double*, const double*, const double*, const double*, double*, double*,
              std::size_t);
void div_avx2(const double*, const double*, const double*, const double*, double*, double*,
              std::size_t);
void modulus_avx2(const double*, const double*, double*, std::size_t);
void one_minus_abs2_avx2(const double*, const double*, double*, std::size_t);
MaxResult weighted_abs_max_avx2(const double*, const double*, const double*, std::size_t);
#endif

}  // namespace wco::simd::detail
