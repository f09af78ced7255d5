#include "tactmesh/simd.hpp"

namespace tact::simd::scalar {

namespace {

template <typename T>
T dot_impl(const T* a, const T* b, std::size_t n) {
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

template <typename T>
void axpy_impl(T alpha, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void scal_impl(T alpha, T* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

template <typename T>
T sum_impl(const T* x, std::size_t n) {
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

template <typename T>
T sumsq_impl(const T* x, std::size_t n) {
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

// Row-streaming form: C[i,:] += A[i,k] * B[k,:]. The same loop order as the
// vector backends so rounding differences stay within reassociation noise.
template <typename T>
void gemm_nn_impl(std::size_t m, std::size_t n, std::size_t k, const T* a,
                  const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) {
    T* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const T aik = a[i * k + p];
      if (aik == T{}) continue;
      const T* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

template <typename T>
void gemm_tn_impl(std::size_t m, std::size_t n, std::size_t k, const T* a,
                  const T* b, T* c) {
  // A stored [k,m]
  for (std::size_t p = 0; p < k; ++p) {
    const T* arow = a + p * m;
    const T* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const T aik = arow[i];
      if (aik == T{}) continue;
      T* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

template <typename T>
void gemm_nt_impl(std::size_t m, std::size_t n, std::size_t k, const T* a,
                  const T* b, T* c) {
  // B stored [n,k]; C[i,j] += dot(A row i, B row j)
  for (std::size_t i = 0; i < m; ++i) {
    const T* arow = a + i * k;
    T* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j)
      crow[j] += dot_impl(arow, b + j * k, k);
  }
}

}  // namespace

float dot(const float* a, const float* b, std::size_t n) {
  return dot_impl(a, b, n);
}
double dot(const double* a, const double* b, std::size_t n) {
  return dot_impl(a, b, n);
}
void axpy(float alpha, const float* x, float* y, std::size_t n) {
  axpy_impl(alpha, x, y, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  axpy_impl(alpha, x, y, n);
}
void scal(float alpha, float* x, std::size_t n) { scal_impl(alpha, x, n); }
void scal(double alpha, double* x, std::size_t n) { scal_impl(alpha, x, n); }
void add(const float* a, const float* b, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub(const float* a, const float* b, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void sub(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void mul(const float* a, const float* b, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
float sum(const float* x, std::size_t n) { return sum_impl(x, n); }
double sum(const double* x, std::size_t n) { return sum_impl(x, n); }
float sumsq(const float* x, std::size_t n) { return sumsq_impl(x, n); }
double sumsq(const double* x, std::size_t n) { return sumsq_impl(x, n); }

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  gemm_nn_impl(m, n, k, a, b, c);
}
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  gemm_nn_impl(m, n, k, a, b, c);
}
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  gemm_tn_impl(m, n, k, a, b, c);
}
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  gemm_tn_impl(m, n, k, a, b, c);
}
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const float* a,
             const float* b, float* c) {
  gemm_nt_impl(m, n, k, a, b, c);
}
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             const double* b, double* c) {
  gemm_nt_impl(m, n, k, a, b, c);
}

}  // namespace tact::simd::scalar
