#pragma once

// Data-parallel inner loops over structure-of-arrays complex data.
//
// Every kernel exists as a portable scalar reference and, on x86-64, as an
// AVX2 variant. The table used by the library is picked once at runtime
// from CPU support; WCO_SIMD=scalar forces the reference path. The AVX2
// kernels use the same operation order as the reference (no FMA), so the
// two tables agree bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include "wco/expr.hpp"

namespace wco::simd {

struct ComplexArray {
  std::vector<double> re;
  std::vector<double> im;

  ComplexArray() = default;
  explicit ComplexArray(std::size_t n) : re(n), im(n) {}
  ComplexArray(std::size_t n, Complex fill) : re(n, fill.real()), im(n, fill.imag()) {}

  std::size_t size() const noexcept { return re.size(); }
  Complex operator[](std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, Complex v) {
    re[i] = v.real();
    im[i] = v.imag();
  }

  static ComplexArray from(std::span<const Complex> values);
  std::vector<Complex> to_vector() const;
};

struct MaxResult {
  double value = 0.0;
  std::size_t index = 0;  // first index attaining the maximum
};

using BinaryKernel = void (*)(const double* ar, const double* ai, const double* br,
                              const double* bi, double* outr, double* outi, std::size_t n);
using UnaryRealKernel = void (*)(const double* re, const double* im, double* out,
                                 std::size_t n);
using WeightedMaxKernel = MaxResult (*)(const double* re, const double* im,
                                        const double* weight, std::size_t n);

struct KernelTable {
  const char* name;
  BinaryKernel add;
  BinaryKernel sub;
  BinaryKernel mul;
  /// (a * conj(b)) / |b|^2, componentwise.
  BinaryKernel div;
  /// sqrt(re^2 + im^2)
  UnaryRealKernel modulus;
  /// (1 - |v|)(1 + |v|) with |v| as in `modulus`
  UnaryRealKernel one_minus_abs2;
  /// max_i |v_i| * weight_i; n == 0 yields {0, 0}
  WeightedMaxKernel weighted_abs_max;
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or unsupported by this CPU.
const KernelTable* avx2_kernels();
const KernelTable& active_kernels();

// Convenience wrappers over active_kernels().
void add(const ComplexArray& a, const ComplexArray& b, ComplexArray& out);
void sub(const ComplexArray& a, const ComplexArray& b, ComplexArray& out);
void mul(const ComplexArray& a, const ComplexArray& b, ComplexArray& out);
void div(const ComplexArray& a, const ComplexArray& b, ComplexArray& out);
std::vector<double> modulus(const ComplexArray& a);
std::vector<double> one_minus_abs2(const ComplexArray& a);
MaxResult weighted_abs_max(const ComplexArray& a, std::span<const double> weight);

}  // namespace wco::simd
