#pragma once

#include <cstddef>

#if defined(__x86_64__) || defined(_M_X64)
#define CTXGEN_HAVE_X86 1
#else
#define CTXGEN_HAVE_X86 0
#endif

#if defined(__aarch64__) && defined(__ARM_NEON)
#define CTXGEN_HAVE_NEON 1
#else
#define CTXGEN_HAVE_NEON 0
#endif

namespace ctxgen::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
void accumulate_scalar(double* acc, const double* x, std::size_t n);
void scale_scalar(double* x, double s, std::size_t n);

#if CTXGEN_HAVE_X86
double dot_avx2(const double* a, const double* b, std::size_t n);
void accumulate_avx2(double* acc, const double* x, std::size_t n);
void scale_avx2(double* x, double s, std::size_t n);
#endif

#if CTXGEN_HAVE_NEON
double dot_neon(const double* a, const double* b, std::size_t n);
void accumulate_neon(double* acc, const double* x, std::size_t n);
void scale_neon(double* x, double s, std::size_t n);
#endif

}  // namespace ctxgen::simd::detail
