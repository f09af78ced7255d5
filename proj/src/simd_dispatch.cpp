#include "tactmesh/simd.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace tact::simd {

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool cpu_has_neon() {
#if defined(__ARM_NEON) || defined(__aarch64__)
  return true;
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("TACTMESH_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2_fma()) return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && cpu_has_neon()) return Backend::neon;
    if (std::strcmp(env, "auto") != 0) return Backend::scalar;
  }
  if (cpu_has_avx2_fma()) return Backend::avx2;
  if (cpu_has_neon()) return Backend::neon;
  return Backend::scalar;
}

Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2_fma();
    case Backend::neon: return cpu_has_neon();
  }
  return false;
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::runtime_error(std::string("simd backend unavailable: ") +
                             backend_name(b));
  g_backend = b;
}

#define TACT_DISPATCH(ret, name, args, call)  \
  ret name args {                             \
    switch (g_backend) {                      \
      case Backend::avx2: return avx2::call;  \
      case Backend::neon: return neon::call;  \
      default: return scalar::call;           \
    }                                         \
  }

TACT_DISPATCH(float, dot, (const float* a, const float* b, std::size_t n), dot(a, b, n))
TACT_DISPATCH(double, dot, (const double* a, const double* b, std::size_t n), dot(a, b, n))
TACT_DISPATCH(void, axpy, (float alpha, const float* x, float* y, std::size_t n), axpy(alpha, x, y, n))
TACT_DISPATCH(void, axpy, (double alpha, const double* x, double* y, std::size_t n), axpy(alpha, x, y, n))
TACT_DISPATCH(void, scal, (float alpha, float* x, std::size_t n), scal(alpha, x, n))
TACT_DISPATCH(void, scal, (double alpha, double* x, std::size_t n), scal(alpha, x, n))
TACT_DISPATCH(void, add, (const float* a, const float* b, float* out, std::size_t n), add(a, b, out, n))
TACT_DISPATCH(void, add, (const double* a, const double* b, double* out, std::size_t n), add(a, b, out, n))
TACT_DISPATCH(void, sub, (const float* a, const float* b, float* out, std::size_t n), sub(a, b, out, n))
TACT_DISPATCH(void, sub, (const double* a, const double* b, double* out, std::size_t n), sub(a, b, out, n))
TACT_DISPATCH(void, mul, (const float* a, const float* b, float* out, std::size_t n), mul(a, b, out, n))
TACT_DISPATCH(void, mul, (const double* a, const double* b, double* out, std::size_t n), mul(a, b, out, n))
TACT_DISPATCH(float, sum, (const float* x, std::size_t n), sum(x, n))
TACT_DISPATCH(double, sum, (const double* x, std::size_t n), sum(x, n))
TACT_DISPATCH(float, sumsq, (const float* x, std::size_t n), sumsq(x, n))
TACT_DISPATCH(double, sumsq, (const double* x, std::size_t n), sumsq(x, n))
TACT_DISPATCH(void, gemm_nn, (std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c), gemm_nn(m, n, k, a, b, c))
TACT_DISPATCH(void, gemm_nn, (std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c), gemm_nn(m, n, k, a, b, c))
TACT_DISPATCH(void, gemm_tn, (std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c), gemm_tn(m, n, k, a, b, c))
TACT_DISPATCH(void, gemm_tn, (std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c), gemm_tn(m, n, k, a, b, c))
TACT_DISPATCH(void, gemm_nt, (std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c), gemm_nt(m, n, k, a, b, c))
TACT_DISPATCH(void, gemm_nt, (std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c), gemm_nt(m, n, k, a, b, c))

#undef TACT_DISPATCH

}  // namespace tact::simd
