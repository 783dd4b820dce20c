#include <cstdlib>
#include <string_view>

#include "ctxgen/simd/vec_kernels.hpp"
#include "kernels_internal.hpp"

namespace ctxgen::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar, detail::dot_scalar, detail::accumulate_scalar, detail::scale_scalar};
  return table;
}

const KernelTable* avx2_kernels() noexcept {
#if CTXGEN_HAVE_X86
  static const KernelTable table{Isa::Avx2, detail::dot_avx2, detail::accumulate_avx2, detail::scale_avx2};
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() noexcept {
#if CTXGEN_HAVE_NEON
  // Advanced SIMD is mandatory on AArch64.
  static const KernelTable table{Isa::Neon, detail::dot_neon, detail::accumulate_neon, detail::scale_neon};
  return &table;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& chosen = []() -> const KernelTable& {
    if (const char* forced = std::getenv("CTXGEN_SIMD"); forced && std::string_view(forced) == "scalar") {
      return scalar_kernels();
    }
    if (const auto* t = avx2_kernels()) return *t;
    if (const auto* t = neon_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active_kernels().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

double squared_norm(std::span<const double> a) noexcept { return active_kernels().dot(a.data(), a.data(), a.size()); }

void accumulate(std::span<double> acc, std::span<const double> x) noexcept {
  active_kernels().accumulate(acc.data(), x.data(), acc.size() < x.size() ? acc.size() : x.size());
}

void scale(std::span<double> x, double s) noexcept { active_kernels().scale(x.data(), s, x.size()); }

}  // namespace ctxgen::simd
