// NEON variants for aarch64 builds; mirrors the AVX2 loop structure. On
// non-ARM targets the stubs forward to scalar and available() reports false.
#include "tactmesh/simd.hpp"

#if defined(__ARM_NEON) || defined(__aarch64__)
#include <arm_neon.h>
#define TACT_HAVE_NEON_BODY 1
#else
#define TACT_HAVE_NEON_BODY 0
#endif

namespace tact::simd::neon {

#if TACT_HAVE_NEON_BODY

float dot(const float* a, const float* b, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
  float r = vaddvq_f32(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vst1q_f32(y + i, vfmaq_f32(vld1q_f32(y + i), va, vld1q_f32(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(float alpha, float* x, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(x + i, vmulq_f32(va, vld1q_f32(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void scal(double alpha, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

#define TACT_EW_OP(name, op32, op64, op_sc)                                  \
  void name(const float* a, const float* b, float* out, std::size_t n) {    \
    std::size_t i = 0;                                                       \
    for (; i + 4 <= n; i += 4)                                               \
      vst1q_f32(out + i, op32(vld1q_f32(a + i), vld1q_f32(b + i)));          \
    for (; i < n; ++i) out[i] = a[i] op_sc b[i];                             \
  }                                                                          \
  void name(const double* a, const double* b, double* out, std::size_t n) { \
    std::size_t i = 0;                                                       \
    for (; i + 2 <= n; i += 2)                                               \
      vst1q_f64(out + i, op64(vld1q_f64(a + i), vld1q_f64(b + i)));          \
    for (; i < n; ++i) out[i] = a[i] op_sc b[i];                             \
  }

TACT_EW_OP(add, vaddq_f32, vaddq_f64, +)
TACT_EW_OP(sub, vsubq_f32, vsubq_f64, -)
TACT_EW_OP(mul, vmulq_f32, vmulq_f64, *)
#undef TACT_EW_OP

float sum(const float* x, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = vaddq_f32(acc, vld1q_f32(x + i));
  float r = vaddvq_f32(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double sum(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

float sumsq(const float* x, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(x + i);
    acc = vfmaq_f32(acc, v, v);
  }
  float r = vaddvq_f32(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double sumsq(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    acc = vfmaq_f64(acc, v, v);
  }
  double r = vaddvq_f64(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

namespace {

inline void row_fma_f32(const float a, const float* b, float* c, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    vst1q_f32(c + j, vfmaq_f32(vld1q_f32(c + j), va, vld1q_f32(b + j)));
  for (; j < n; ++j) c[j] += a * b[j];
}

inline void row_fma_f64(const double a, const double* b, double* c, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2)
    vst1q_f64(c + j, vfmaq_f64(vld1q_f64(c + j), va, vld1q_f64(b + j)));
  for (; j < n; ++j) c[j] += a * b[j];
}

}  // namespace

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const float aik = a[i * k + p];
      if (aik == 0.0f) continue;
      row_fma_f32(aik, b + p * n, c + i * n, n);
    }
}

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const double aik = a[i * k + p];
      if (aik == 0.0) continue;
      row_fma_f64(aik, b + p * n, c + i * n, n);
    }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < m; ++i) {
      if (a[p * m + i] == 0.0f) continue;
      row_fma_f32(a[p * m + i], b + p * n, c + i * n, n);
    }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t i = 0; i < m; ++i) {
      if (a[p * m + i] == 0.0) continue;
      row_fma_f64(a[p * m + i], b + p * n, c + i * n, n);
    }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] += dot(a + i * k, b + j * k, k);
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] += dot(a + i * k, b + j * k, k);
}

#else  // !TACT_HAVE_NEON_BODY

float dot(const float* a, const float* b, std::size_t n) { return scalar::dot(a, b, n); }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void axpy(float alpha, const float* x, float* y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
void scal(float alpha, float* x, std::size_t n) { scalar::scal(alpha, x, n); }
void scal(double alpha, double* x, std::size_t n) { scalar::scal(alpha, x, n); }
void add(const float* a, const float* b, float* out, std::size_t n) { scalar::add(a, b, out, n); }
void add(const double* a, const double* b, double* out, std::size_t n) { scalar::add(a, b, out, n); }
void sub(const float* a, const float* b, float* out, std::size_t n) { scalar::sub(a, b, out, n); }
void sub(const double* a, const double* b, double* out, std::size_t n) { scalar::sub(a, b, out, n); }
void mul(const float* a, const float* b, float* out, std::size_t n) { scalar::mul(a, b, out, n); }
void mul(const double* a, const double* b, double* out, std::size_t n) { scalar::mul(a, b, out, n); }
float sum(const float* x, std::size_t n) { return scalar::sum(x, n); }
double sum(const double* x, std::size_t n) { return scalar::sum(x, n); }
float sumsq(const float* x, std::size_t n) { return scalar::sumsq(x, n); }
double sumsq(const double* x, std::size_t n) { return scalar::sumsq(x, n); }
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c) { scalar::gemm_nn(m, n, k, a, b, c); }
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) { scalar::gemm_nn(m, n, k, a, b, c); }
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c) { scalar::gemm_tn(m, n, k, a, b, c); }
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) { scalar::gemm_tn(m, n, k, a, b, c); }
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a, const float* b, float* c) { scalar::gemm_nt(m, n, k, a, b, c); }
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) { scalar::gemm_nt(m, n, k, a, b, c); }

#endif

}  // namespace tact::simd::neon
