#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "rcolor/simd/kernels.hpp"
#include "support.hpp"

using namespace rcolor;
using namespace rcolor::testing;
using rcolor::simd::ModKernels;

namespace {

std::vector<const ModKernels*> kernel_sets() {
  std::vector<const ModKernels*> out{&simd::scalar_kernels()};
  if (const auto* k = simd::avx2_kernels()) out.push_back(k);
  return out;
}

const std::uint64_t kModuli[] = {2,
                                 3,
                                 5,
                                 7,
                                 1000003,
                                 (1ULL << 26) - 5,
                                 1ULL << 26,
                                 (1ULL << 26) + 1,
                                 (1ULL << 40) + 15,
                                 (1ULL << 61) - 1,
                                 simd::kMaxModulus};

std::vector<std::uint64_t> residues(Rng& rng, std::size_t n, std::uint64_t m) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) {
    // Bias towards the extremes, where carries and corrections happen.
    switch (uniform(rng, 0, 3)) {
      case 0: x = 0; break;
      case 1: x = m - 1; break;
      default: x = uniform(rng, 0, m - 1);
    }
  }
  return v;
}

}  // namespace

TEST(Simd, KernelsMatchWideIntegerReference) {
  Rng rng(99);
  for (const ModKernels* k : kernel_sets()) {
    for (std::uint64_t m : kModuli) {
      for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1023, 4099}) {
        const auto src = residues(rng, n, m);
        const auto base = residues(rng, n, m);
        for (std::uint64_t c : {std::uint64_t{0}, std::uint64_t{1}, m - 1, uniform(rng, 0, m - 1)}) {
          auto dst = base;
          k->axpy(dst.data(), src.data(), n, c, m);
          for (std::size_t i = 0; i < n; ++i) {
            const auto want =
                static_cast<std::uint64_t>((static_cast<unsigned __int128>(c) * src[i] + base[i]) % m);
            ASSERT_EQ(dst[i], want) << k->name << " axpy m=" << m << " n=" << n << " i=" << i << " c=" << c;
          }
        }
        auto sum = base;
        k->add(sum.data(), src.data(), n, m);
        auto diff = base;
        k->sub(diff.data(), src.data(), n, m);
        for (std::size_t i = 0; i < n; ++i) {
          ASSERT_EQ(sum[i], static_cast<std::uint64_t>((static_cast<unsigned __int128>(base[i]) + src[i]) % m))
              << k->name << " add m=" << m;
          ASSERT_EQ(diff[i], static_cast<std::uint64_t>((static_cast<unsigned __int128>(base[i]) + m - src[i]) % m))
              << k->name << " sub m=" << m;
        }
      }
    }
  }
}

TEST(Simd, VariantsAgreeBitForBit) {
  const ModKernels* wide = simd::avx2_kernels();
  if (wide == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
  const ModKernels& ref = simd::scalar_kernels();
  Rng rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t m = uniform(rng, 0, 1) ? uniform(rng, 2, 1ULL << 26) : uniform(rng, 2, simd::kMaxModulus);
    const std::size_t n = uniform(rng, 0, 700);
    const std::size_t misalign = uniform(rng, 0, 3);
    std::vector<std::uint64_t> src = residues(rng, n + misalign, m);
    std::vector<std::uint64_t> a = residues(rng, n + misalign, m);
    std::vector<std::uint64_t> b = a;
    const std::uint64_t c = uniform(rng, 0, m - 1);
    ref.axpy(a.data() + misalign, src.data() + misalign, n, c, m);
    wide->axpy(b.data() + misalign, src.data() + misalign, n, c, m);
    ASSERT_EQ(a, b) << "axpy m=" << m << " n=" << n;
    ref.add(a.data() + misalign, src.data(), n, m);
    wide->add(b.data() + misalign, src.data(), n, m);
    ASSERT_EQ(a, b) << "add m=" << m;
    ref.sub(a.data(), src.data() + misalign, n, m);
    wide->sub(b.data(), src.data() + misalign, n, m);
    ASSERT_EQ(a, b) << "sub m=" << m;
  }
}

TEST(Simd, DispatchHonoursEnvironment) {
  const char* pref = std::getenv("RCOLOR_SIMD");
  const ModKernels& active = simd::active_kernels();
  if (pref != nullptr && std::string(pref) == "scalar") {
    EXPECT_STREQ(active.name, simd::scalar_kernels().name);
  } else if (simd::avx2_kernels() != nullptr) {
    EXPECT_STREQ(active.name, simd::avx2_kernels()->name);
  } else {
    EXPECT_STREQ(active.name, simd::scalar_kernels().name);
  }
}

TEST(Simd, SeriesProductsIndependentOfKernelChoice) {
  // Whichever kernels are active, modular products match the schoolbook
  // reference, including moduli that take the wide-integer fallback.
  Rng rng(7);
  for (std::uint64_t m : {5ULL, 7ULL, (1ULL << 26) - 5, (1ULL << 40) + 15}) {
    for (int t = 0; t < 5; ++t) {
      const auto a = random_mod_series(rng, 300, m, 0.7);
      const auto b = random_mod_series(rng, 300, m, 0.05);
      const std::vector<std::uint64_t> av(a.coeffs().begin(), a.coeffs().end());
      const std::vector<std::uint64_t> bv(b.coeffs().begin(), b.coeffs().end());
      const auto want = naive_mul_mod(av, bv, 300, m);
      const auto got = mul(a, b);
      ASSERT_EQ(std::vector<std::uint64_t>(got.coeffs().begin(), got.coeffs().end()), want) << m;
    }
  }
}
