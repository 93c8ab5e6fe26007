#include <doctest.h>

#include <cstring>
#include <random>

#include "wco/simd/kernels.hpp"

using namespace wco;
using namespace wco::simd;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar reference kernels") {
  const auto& k = scalar_kernels();
  const double ar[2] = {1.0, 0.0}, ai[2] = {2.0, 1.0};
  const double br[2] = {3.0, 0.0}, bi[2] = {-1.0, 1.0};
  double r[2], i[2];
  k.mul(ar, ai, br, bi, r, i, 2);
  CHECK(r[0] == 5.0);
  CHECK(i[0] == 5.0);
  CHECK(r[1] == -1.0);
  CHECK(i[1] == 0.0);
  k.div(ar, ai, br, bi, r, i, 2);
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(i[1] == doctest::Approx(0.0));
  double m[2];
  k.modulus(br, bi, m, 2);
  CHECK(m[0] == doctest::Approx(std::sqrt(10.0)));
  const double w[2] = {1.0, 4.0};
  const auto best = k.weighted_abs_max(br, bi, w, 2);
  CHECK(best.index == 1);
  CHECK(best.value == doctest::Approx(4.0));
  CHECK(k.weighted_abs_max(br, bi, w, 0).value == 0.0);
}

TEST_CASE("AVX2 kernels are bit-identical to the reference") {
  const KernelTable* avx = avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 not available; equivalence not exercised");
    return;
  }
  const auto& ref = scalar_kernels();
  std::mt19937_64 rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 31u, 64u, 1001u}) {
    const auto ar = random_values(rng, n), ai = random_values(rng, n);
    const auto br = random_values(rng, n), bi = random_values(rng, n);
    auto weight = random_values(rng, n);
    for (auto& x : weight) x = std::abs(x);

    using Bin = BinaryKernel;
    for (auto pick : {+[](const KernelTable& t) { return t.add; },
                      +[](const KernelTable& t) { return t.sub; },
                      +[](const KernelTable& t) { return t.mul; },
                      +[](const KernelTable& t) { return t.div; }}) {
      std::vector<double> r1(n), i1(n), r2(n), i2(n);
      Bin a = pick(ref), b = pick(*avx);
      a(ar.data(), ai.data(), br.data(), bi.data(), r1.data(), i1.data(), n);
      b(ar.data(), ai.data(), br.data(), bi.data(), r2.data(), i2.data(), n);
      CHECK(bit_equal(r1, r2));
      CHECK(bit_equal(i1, i2));
    }
    for (auto pick : {+[](const KernelTable& t) { return t.modulus; },
                      +[](const KernelTable& t) { return t.one_minus_abs2; }}) {
      std::vector<double> o1(n), o2(n);
      pick(ref)(ar.data(), ai.data(), o1.data(), n);
      pick(*avx)(ar.data(), ai.data(), o2.data(), n);
      CHECK(bit_equal(o1, o2));
    }
    const auto m1 = ref.weighted_abs_max(ar.data(), ai.data(), weight.data(), n);
    const auto m2 = avx->weighted_abs_max(ar.data(), ai.data(), weight.data(), n);
    CHECK(m1.value == m2.value);
    CHECK(m1.index == m2.index);
  }
}

TEST_CASE("weighted max reports the first maximiser on ties") {
  std::vector<double> re(13, 1.0), im(13, 0.0), w(13, 1.0);
  for (const KernelTable* t : {&scalar_kernels(), avx2_kernels()}) {
    if (t == nullptr) continue;
    CHECK(t->weighted_abs_max(re.data(), im.data(), w.data(), 13).index == 0);
    w[6] = 2.0;
    w[9] = 2.0;
    CHECK(t->weighted_abs_max(re.data(), im.data(), w.data(), 13).index == 6);
    w[6] = w[9] = 1.0;
  }
}

TEST_CASE("array wrappers") {
  const std::vector<Complex> a = {{1, 1}, {0.6, 0.8}, {0, 0}};
  const auto arr = ComplexArray::from(a);
  CHECK(arr.to_vector() == a);
  const auto mod = modulus(arr);
  CHECK(mod[1] == doctest::Approx(1.0));
  const auto base = one_minus_abs2(arr);
  CHECK(base[2] == 1.0);
  ComplexArray out;
  mul(arr, arr, out);
  CHECK(out[0] == Complex(0.0, 2.0));
  CHECK_FALSE(std::string(active_kernels().name).empty());
}
