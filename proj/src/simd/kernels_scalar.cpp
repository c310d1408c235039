#include "rcolor/simd/kernels.hpp"

namespace rcolor::simd {

namespace {

void add_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = dst[i] + src[i];
    dst[i] = s >= m ? s - m : s;
  }
}

void sub_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = dst[i] >= src[i] ? dst[i] - src[i] : dst[i] + (m - src[i]);
  }
}

void axpy_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n, std::uint64_t c,
                 std::uint64_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned __int128 t = static_cast<unsigned __int128>(c) * src[i] + dst[i];
    dst[i] = static_cast<std::uint64_t>(t % m);
  }
}

constexpr ModKernels kScalar{"scalar", add_scalar, sub_scalar, axpy_scalar};

}  // namespace

const ModKernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace rcolor::simd
