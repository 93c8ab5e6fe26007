#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace wco::simd {

namespace {

bool cpu_has_avx2() {
#if defined(WCO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* select() {
  const char* forced = std::getenv("WCO_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

void check_same_size(const ComplexArray& a, const ComplexArray& b) {
  if (a.size() != b.size()) throw std::invalid_argument("simd: array size mismatch");
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",
      detail::add_scalar,
      detail::sub_scalar,
      detail::mul_scalar,
      detail::div_scalar,
      detail::modulus_scalar,
      detail::one_minus_abs2_scalar,
      detail::weighted_abs_max_scalar,
  };
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(WCO_HAVE_AVX2)
  static const KernelTable table{
      "avx2",
      detail::add_avx2,
      detail::sub_avx2,
      detail::mul_avx2,
      detail::div_avx2,
      detail::modulus_avx2,
      detail::one_minus_abs2_avx2,
      detail::weighted_abs_max_avx2,
  };
  static const bool supported = cpu_has_avx2();
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable* table = select();
  return *table;
}

ComplexArray ComplexArray::from(std::span<const Complex> values) {
  ComplexArray out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.set(i, values[i]);
  return out;
}

std::vector<Complex> ComplexArray::to_vector() const {
  std::vector<Complex> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = (*this)[i];
  return out;
}

void add(const ComplexArray& a, const ComplexArray& b, ComplexArray& out) {
  check_same_size(a, b);
  out.re.resize(a.size());
  out.im.resize(a.size());
  active_kernels().add(a.re.data(), a.im.data(), b.re.data(), b.im.data(), out.re.data(),
                       out.im.data(), a.size());
}

void sub(const ComplexArray& a, const ComplexArray& b, ComplexArray& out) {
  check_same_size(a, b);
  out.re.resize(a.size());
  out.im.resize(a.size());
  active_kernels().sub(a.re.data(), a.im.data(), b.re.data(), b.im.data(), out.re.data(),
                       out.im.data(), a.size());
}

void mul(const ComplexArray& a, const ComplexArray& b, ComplexArray& out) {
  check_same_size(a, b);
  out.re.resize(a.size());
  out.im.resize(a.size());
  active_kernels().mul(a.re.data(), a.im.data(), b.re.data(), b.im.data(), out.re.data(),
                       out.im.data(), a.size());
}

void div(const ComplexArray& a, const ComplexArray& b, ComplexArray& out) {
  check_same_size(a, b);
  out.re.resize(a.size());
  out.im.resize(a.size());
  active_kernels().div(a.re.data(), a.im.data(), b.re.data(), b.im.data(), out.re.data(),
                       out.im.data(), a.size());
}

std::vector<double> modulus(const ComplexArray& a) {
  std::vector<double> out(a.size());
  active_kernels().modulus(a.re.data(), a.im.data(), out.data(), a.size());
  return out;
}

std::vector<double> one_minus_abs2(const ComplexArray& a) {
  std::vector<double> out(a.size());
  active_kernels().one_minus_abs2(a.re.data(), a.im.data(), out.data(), a.size());
  return out;
}

MaxResult weighted_abs_max(const ComplexArray& a, std::span<const double> weight) {
  if (weight.size() != a.size()) throw std::invalid_argument("simd: weight size mismatch");
  return active_kernels().weighted_abs_max(a.re.data(), a.im.data(), weight.data(), a.size());
}

}  // namespace wco::simd
