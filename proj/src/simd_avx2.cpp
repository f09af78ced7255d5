// Compiled with -mavx2 -mfma (see CMakeLists); only entered at runtime when
// cpuid reports both. On other architectures the stubs forward to scalar.
#include "tactmesh/simd.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define TACT_HAVE_AVX2_BODY 1
#else
#define TACT_HAVE_AVX2_BODY 0
#endif

namespace tact::simd::avx2 {

#if TACT_HAVE_AVX2_BODY

float dot(const float* a, const float* b, std::size_t n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8), _mm256_loadu_ps(b + i + 8), acc1);
  }
  for (; i + 8 <= n; i += 8)
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  acc0 = _mm256_add_ps(acc0, acc1);
  alignas(32) float lane[8];
  _mm256_store_ps(lane, acc0);
  float r = lane[0] + lane[1] + lane[2] + lane[3] + lane[4] + lane[5] + lane[6] + lane[7];
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc0);
  double r = lane[0] + lane[1] + lane[2] + lane[3];
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vy = _mm256_loadu_ps(y + i);
    vy = _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), vy);
    _mm256_storeu_ps(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(float alpha, float* x, std::size_t n) {
  const __m256 va = _mm256_set1_ps(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(x + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void scal(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

#define TACT_EW_OP(name, op_ps, op_pd, op_sc)                                \
  void name(const float* a, const float* b, float* out, std::size_t n) {    \
    std::size_t i = 0;                                                       \
    for (; i + 8 <= n; i += 8)                                               \
      _mm256_storeu_ps(out + i, op_ps(_mm256_loadu_ps(a + i),               \
                                      _mm256_loadu_ps(b + i)));             \
    for (; i < n; ++i) out[i] = a[i] op_sc b[i];                             \
  }                                                                          \
  void name(const double* a, const double* b, double* out, std::size_t n) { \
    std::size_t i = 0;                                                       \
    for (; i + 4 <= n; i += 4)                                               \
      _mm256_storeu_pd(out + i, op_pd(_mm256_loadu_pd(a + i),               \
                                      _mm256_loadu_pd(b + i)));             \
    for (; i < n; ++i) out[i] = a[i] op_sc b[i];                             \
  }

TACT_EW_OP(add, _mm256_add_ps, _mm256_add_pd, +)
TACT_EW_OP(sub, _mm256_sub_ps, _mm256_sub_pd, -)
TACT_EW_OP(mul, _mm256_mul_ps, _mm256_mul_pd, *)
#undef TACT_EW_OP

float sum(const float* x, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) acc = _mm256_add_ps(acc, _mm256_loadu_ps(x + i));
  alignas(32) float lane[8];
  _mm256_store_ps(lane, acc);
  float r = lane[0] + lane[1] + lane[2] + lane[3] + lane[4] + lane[5] + lane[6] + lane[7];
  for (; i < n; ++i) r += x[i];
  return r;
}

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double r = lane[0] + lane[1] + lane[2] + lane[3];
  for (; i < n; ++i) r += x[i];
  return r;
}

float sumsq(const float* x, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    acc = _mm256_fmadd_ps(v, v, acc);
  }
  alignas(32) float lane[8];
  _mm256_store_ps(lane, acc);
  float r = lane[0] + lane[1] + lane[2] + lane[3] + lane[4] + lane[5] + lane[6] + lane[7];
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

double sumsq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double r = lane[0] + lane[1] + lane[2] + lane[3];
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

namespace {

// C[i,:] += A[i,p] * B[p,:], vectorized over the row of C. Two row blocks
// per iteration keep the FMA ports busy without a packing pass.
inline void row_fma_f32(const float a, const float* b, float* c, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t j = 0;
  for (; j + 16 <= n; j += 16) {
    _mm256_storeu_ps(c + j, _mm256_fmadd_ps(va, _mm256_loadu_ps(b + j),
                                            _mm256_loadu_ps(c + j)));
    _mm256_storeu_ps(c + j + 8, _mm256_fmadd_ps(va, _mm256_loadu_ps(b + j + 8),
                                                _mm256_loadu_ps(c + j + 8)));
  }
  for (; j + 8 <= n; j += 8)
    _mm256_storeu_ps(c + j, _mm256_fmadd_ps(va, _mm256_loadu_ps(b + j),
                                            _mm256_loadu_ps(c + j)));
  for (; j < n; ++j) c[j] += a * b[j];
}

inline void row_fma_f64(const double a, const double* b, double* c, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    _mm256_storeu_pd(c + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(b + j),
                                            _mm256_loadu_pd(c + j)));
    _mm256_storeu_pd(c + j + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(b + j + 4),
                                                _mm256_loadu_pd(c + j + 4)));
  }
  for (; j + 4 <= n; j += 4)
    _mm256_storeu_pd(c + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(b + j),
                                            _mm256_loadu_pd(c + j)));
  for (; j < n; ++j) c[j] += a * b[j];
}

}  // namespace

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t i = 0; i < m; ++i) {
    float* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const float aik = a[i * k + p];
      if (aik == 0.0f) continue;
      row_fma_f32(aik, b + p * n, crow, n);
    }
  }
}

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aik = a[i * k + p];
      if (aik == 0.0) continue;
      row_fma_f64(aik, b + p * n, crow, n);
    }
  }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t p = 0; p < k; ++p) {
    const float* arow = a + p * m;
    const float* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      if (arow[i] == 0.0f) continue;
      row_fma_f32(arow[i], brow, c + i * n, n);
    }
  }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = a + p * m;
    const double* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      if (arow[i] == 0.0) continue;
      row_fma_f64(arow[i], brow, c + i * n, n);
    }
  }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const float* arow = a + i * k;
    float* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += dot(arow, b + j * k, k);
  }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += dot(arow, b + j * k, k);
  }
}

#else  // !TACT_HAVE_AVX2_BODY: forward to scalar so the symbols exist.

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

}  // namespace tact::simd::avx2
