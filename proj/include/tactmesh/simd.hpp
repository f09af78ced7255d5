#pragma once

#include <cstddef>

// Data-parallel kernels behind the dense linear algebra (GEMM for the conv /
// fully-connected layers, dot/axpy for the CG solver). Every kernel has a
// scalar reference implementation and, where the hardware supports it, an
// AVX2+FMA or NEON variant selected once at startup. The environment variable
// TACTMESH_SIMD=scalar|avx2|neon|auto overrides detection.
//
// GEMM semantics: C += op(A) * op(B), row-major, caller zero-fills C when a
// plain product is wanted. Vector kernels are bit-identical across backends
// (same per-element operation order); reductions and GEMM may differ by
// rounding due to reassociation and FMA, which the equivalence tests bound.

namespace tact::simd {

enum class Backend { scalar = 0, avx2 = 1, neon = 2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);
// Test hook; throws if the backend is unavailable on this machine.
void force_backend(Backend b);

#define TACT_SIMD_DECL(ns)                                                    \
  namespace ns {                                                              \
  float dot(const float* a, const float* b, std::size_t n);                  \
  double dot(const double* a, const double* b, std::size_t n);               \
  void axpy(float alpha, const float* x, float* y, std::size_t n);           \
  void axpy(double alpha, const double* x, double* y, std::size_t n);        \
  void scal(float alpha, float* x, std::size_t n);                           \
  void scal(double alpha, double* x, std::size_t n);                         \
  void add(const float* a, const float* b, float* out, std::size_t n);       \
  void add(const double* a, const double* b, double* out, std::size_t n);    \
  void sub(const float* a, const float* b, float* out, std::size_t n);       \
  void sub(const double* a, const double* b, double* out, std::size_t n);    \
  void mul(const float* a, const float* b, float* out, std::size_t n);       \
  void mul(const double* a, const double* b, double* out, std::size_t n);    \
  float sum(const float* x, std::size_t n);                                  \
  double sum(const double* x, std::size_t n);                                \
  float sumsq(const float* x, std::size_t n);                                \
  double sumsq(const double* x, std::size_t n);                              \
  void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a,  \
               const float* b, float* c);                                    \
  void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, \
               const double* b, double* c);                                  \
  void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a,  \
               const float* b, float* c);                                    \
  void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, \
               const double* b, double* c);                                  \
  void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a,  \
               const float* b, float* c);                                    \
  void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, \
               const double* b, double* c);                                  \
  }

// Reference kernels, always present; the oracle side of equivalence tests.
TACT_SIMD_DECL(scalar)
// Vector variants; only callable when backend_available() says so.
TACT_SIMD_DECL(avx2)
TACT_SIMD_DECL(neon)

#undef TACT_SIMD_DECL

// Dispatched entry points (resolve to the active backend).
float dot(const float* a, const float* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(float alpha, float* x, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void add(const float* a, const float* b, float* out, std::size_t n);
void add(const double* a, const double* b, double* out, std::size_t n);
void sub(const float* a, const float* b, float* out, std::size_t n);
void sub(const double* a, const double* b, double* out, std::size_t n);
void mul(const float* a, const float* b, float* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
float sum(const float* x, std::size_t n);
double sum(const double* x, std::size_t n);
float sumsq(const float* x, std::size_t n);
double sumsq(const double* x, std::size_t n);
// C[m,n] += A[m,k] * B[k,n]
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c);
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c);
// C[m,n] += A^T * B with A stored [k,m]
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c);
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c);
// C[m,n] += A * B^T with B stored [n,k]
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c);
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c);

}  // namespace tact::simd
