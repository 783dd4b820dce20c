#pragma once

// Dense double-precision kernels behind sentence embedding and cosine
// similarity. Every kernel has a scalar reference; AVX2 and NEON variants are
// picked at runtime and must agree with the reference to rounding error.

#include <cstddef>
#include <span>
#include <string_view>

namespace ctxgen::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // acc[i] += x[i]
  void (*accumulate)(double* acc, const double* x, std::size_t n);
  // x[i] *= s
  void (*scale)(double* x, double s, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the ISA was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

// Best table for this CPU, chosen once. Setting CTXGEN_SIMD=scalar in the
// environment forces the reference kernels.
const KernelTable& active_kernels() noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double squared_norm(std::span<const double> a) noexcept;
void accumulate(std::span<double> acc, std::span<const double> x) noexcept;
void scale(std::span<double> x, double s) noexcept;

}  // namespace ctxgen::simd
