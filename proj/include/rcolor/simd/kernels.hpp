#pragma once

// Vector kernels over canonical residues in [0, m).
//
// Every series operation in modular mode reduces to these three shapes of
// inner loop. The scalar set is the reference; wider variants must produce
// bit-identical output and are selected once at startup.

#include <cstddef>
#include <cstdint>

namespace rcolor::simd {

struct ModKernels {
  const char* name;
  // dst[i] = (dst[i] + src[i]) mod m
  void (*add)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m);
  // dst[i] = (dst[i] - src[i]) mod m
  void (*sub)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m);
  // dst[i] = (dst[i] + c * src[i]) mod m, with c < m
  void (*axpy)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t c,
               std::uint64_t m);
};

/// Largest modulus accepted by the kernels (and by modular series).
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

const ModKernels& scalar_kernels() noexcept;

/// AVX2 variants, or nullptr when the build or the running CPU lacks AVX2.
const ModKernels* avx2_kernels() noexcept;

/// Kernel set used by the library. Chosen on first use: AVX2 when available,
/// unless the environment variable RCOLOR_SIMD is set to "scalar".
const ModKernels& active_kernels() noexcept;

}  // namespace rcolor::simd
