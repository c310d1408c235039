#include "rcolor/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace rcolor::simd {

#if defined(__AVX2__)

namespace {

// Moduli below 2^26 keep c*src + dst under 2^53, so the product and the
// quotient estimate are exact in double precision.
constexpr std::uint64_t kAxpyDoubleLimit = std::uint64_t{1} << 26;

// 2^52 as a double and as its bit pattern: OR-ing an integer below 2^52 into
// the mantissa and subtracting 2^52 converts it exactly.
constexpr double kMagic = 4503599627370496.0;
constexpr long long kMagicBits = 0x4330000000000000LL;

inline __m256d to_double(__m256i x, __m256i magic_bits, __m256d magic) {
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_bits)), magic);
}

inline __m256i to_u64(__m256d x, __m256i magic_bits, __m256d magic) {
  return _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(x, magic)), magic_bits);
}

void add_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m) {
  const __m256i vm = _mm256_set1_epi64x(static_cast<long long>(m));
  const __m256i vm1 = _mm256_set1_epi64x(static_cast<long long>(m - 1));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i s = _mm256_add_epi64(a, b);
    const __m256i over = _mm256_cmpgt_epi64(s, vm1);
    s = _mm256_sub_epi64(s, _mm256_and_si256(over, vm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), s);
  }
  for (; i < n; ++i) {
    const std::uint64_t s = dst[i] + src[i];
    dst[i] = s >= m ? s - m : s;
  }
}

void sub_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m) {
  const __m256i vm = _mm256_set1_epi64x(static_cast<long long>(m));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i d = _mm256_sub_epi64(a, b);
    const __m256i neg = _mm256_cmpgt_epi64(zero, d);
    d = _mm256_add_epi64(d, _mm256_and_si256(neg, vm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
  }
  for (; i < n; ++i) {
    dst[i] = dst[i] >= src[i] ? dst[i] - src[i] : dst[i] + (m - src[i]);
  }
}

void axpy_tail(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t c,
               std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned __int128 t = static_cast<unsigned __int128>(c) * src[i] + dst[i];
    dst[i] = static_cast<std::uint64_t>(t % m);
  }
}

void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t c,
               std::uint64_t m) {
  if (m >= kAxpyDoubleLimit) {
    axpy_tail(dst, src, n, c, m);
    return;
  }
  const __m256i magic_bits = _mm256_set1_epi64x(kMagicBits);
  const __m256d magic = _mm256_set1_pd(kMagic);
  const __m256d vm = _mm256_set1_pd(static_cast<double>(m));
  const __m256d vinv = _mm256_set1_pd(1.0 / static_cast<double>(m));
  const __m256d vc = _mm256_set1_pd(static_cast<double>(c));
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256d x = _mm256_fmadd_pd(vc, to_double(b, magic_bits, magic), to_double(a, magic_bits, magic));
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, vinv));
    __m256d r = _mm256_fnmadd_pd(q, vm, x);
    // The quotient estimate can be off by one in either direction.
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vm));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vm, _CMP_GE_OQ), vm));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), to_u64(r, magic_bits, magic));
  }
  axpy_tail(dst + i, src + i, n - i, c, m);
}

constexpr ModKernels kAvx2{"avx2", add_avx2, sub_avx2, axpy_avx2};

}  // namespace

const ModKernels* avx2_kernels() noexcept {
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
}

#else

const ModKernels* avx2_kernels() noexcept { return nullptr; }

#endif

}  // namespace rcolor::simd
