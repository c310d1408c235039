#include <cstdlib>
#include <string_view>

#include "rcolor/simd/kernels.hpp"

namespace rcolor::simd {

namespace {

const ModKernels& select_kernels() noexcept {
  const char* pref = std::getenv("RCOLOR_SIMD");
  if (pref != nullptr && std::string_view(pref) == "scalar") return scalar_kernels();
  if (const ModKernels* k = avx2_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const ModKernels& active_kernels() noexcept {
  static const ModKernels& chosen = select_kernels();
  return chosen;
}

}  // namespace rcolor::simd
