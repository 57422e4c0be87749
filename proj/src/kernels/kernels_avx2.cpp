#include "svomerge/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the dispatcher verified CPU support first.
namespace svo::kern {
namespace {

inline float hsum8(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_add_ps(lo, _mm_movehl_ps(lo, lo));
  lo = _mm_add_ss(lo, _mm_shuffle_ps(lo, lo, 1));
  return _mm_cvtss_f32(lo);
}

inline double hsum4(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// ---------------------------------------------------------------- float ----

float dot_f(const float* x, const float* y, std::size_t n) {
  __m256 a0 = _mm256_setzero_ps(), a1 = _mm256_setzero_ps();
  __m256 a2 = _mm256_setzero_ps(), a3 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    a0 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), a0);
    a1 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i + 8), _mm256_loadu_ps(y + i + 8), a1);
    a2 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i + 16), _mm256_loadu_ps(y + i + 16), a2);
    a3 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i + 24), _mm256_loadu_ps(y + i + 24), a3);
  }
  for (; i + 8 <= n; i += 8)
    a0 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), a0);
  float acc = hsum8(_mm256_add_ps(_mm256_add_ps(a0, a1), _mm256_add_ps(a2, a3)));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_f(float a, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
    _mm256_storeu_ps(y + i + 8, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i + 8), _mm256_loadu_ps(y + i + 8)));
  }
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void relu_f(const float* x, float* y, std::size_t n) {
  const __m256 z = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(y + i, _mm256_max_ps(_mm256_loadu_ps(x + i), z));
  for (; i < n; ++i) y[i] = x[i] > 0.f ? x[i] : 0.f;
}

void relu_backward_f(const float* act, const float* dy, float* dx, std::size_t n) {
  const __m256 z = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 mask = _mm256_cmp_ps(_mm256_loadu_ps(act + i), z, _CMP_GT_OQ);
    _mm256_storeu_ps(dx + i, _mm256_and_ps(_mm256_loadu_ps(dy + i), mask));
  }
  for (; i < n; ++i) dx[i] = act[i] > 0.f ? dy[i] : 0.f;
}

void adam_step_f(float* w, const float* g, float* m, float* v, std::size_t n,
                 float lr, float beta1, float beta2, float eps, float bias1,
                 float bias2) {
  const __m256 vb1 = _mm256_set1_ps(beta1), vb1c = _mm256_set1_ps(1.f - beta1);
  const __m256 vb2 = _mm256_set1_ps(beta2), vb2c = _mm256_set1_ps(1.f - beta2);
  const __m256 vlr = _mm256_set1_ps(lr), veps = _mm256_set1_ps(eps);
  const __m256 vib1 = _mm256_set1_ps(1.f / bias1), vib2 = _mm256_set1_ps(1.f / bias2);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 gi = _mm256_loadu_ps(g + i);
    __m256 mi = _mm256_fmadd_ps(vb1c, gi, _mm256_mul_ps(vb1, _mm256_loadu_ps(m + i)));
    __m256 vi = _mm256_fmadd_ps(vb2c, _mm256_mul_ps(gi, gi), _mm256_mul_ps(vb2, _mm256_loadu_ps(v + i)));
    _mm256_storeu_ps(m + i, mi);
    _mm256_storeu_ps(v + i, vi);
    const __m256 mhat = _mm256_mul_ps(mi, vib1);
    const __m256 vhat = _mm256_mul_ps(vi, vib2);
    const __m256 den = _mm256_add_ps(_mm256_sqrt_ps(vhat), veps);
    _mm256_storeu_ps(w + i, _mm256_sub_ps(_mm256_loadu_ps(w + i), _mm256_div_ps(_mm256_mul_ps(vlr, mhat), den)));
  }
  for (; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.f - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.f - beta2) * g[i] * g[i];
    const float mhat = m[i] / bias1;
    const float vhat = v[i] / bias2;
    w[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

void stencil3x3_f(const float* w, const float* src, float* dst, std::size_t x_n,
                  std::size_t y_n, std::size_t stride) {
  const __m256 w0 = _mm256_set1_ps(w[0]), w1 = _mm256_set1_ps(w[1]), w2 = _mm256_set1_ps(w[2]);
  const __m256 w3 = _mm256_set1_ps(w[3]), w4 = _mm256_set1_ps(w[4]), w5 = _mm256_set1_ps(w[5]);
  const __m256 w6 = _mm256_set1_ps(w[6]), w7 = _mm256_set1_ps(w[7]), w8 = _mm256_set1_ps(w[8]);
  for (std::size_t x = 0; x < x_n; ++x) {
    const float* s0 = src + (x - 1) * stride - 1;
    const float* s1 = s0 + stride;
    const float* s2 = s1 + stride;
    float* d = dst + x * stride;
    std::size_t y = 0;
    for (; y + 8 <= y_n; y += 8) {
      __m256 acc = _mm256_loadu_ps(d + y);
      acc = _mm256_fmadd_ps(w0, _mm256_loadu_ps(s0 + y), acc);
      acc = _mm256_fmadd_ps(w1, _mm256_loadu_ps(s0 + y + 1), acc);
      acc = _mm256_fmadd_ps(w2, _mm256_loadu_ps(s0 + y + 2), acc);
      acc = _mm256_fmadd_ps(w3, _mm256_loadu_ps(s1 + y), acc);
      acc = _mm256_fmadd_ps(w4, _mm256_loadu_ps(s1 + y + 1), acc);
      acc = _mm256_fmadd_ps(w5, _mm256_loadu_ps(s1 + y + 2), acc);
      acc = _mm256_fmadd_ps(w6, _mm256_loadu_ps(s2 + y), acc);
      acc = _mm256_fmadd_ps(w7, _mm256_loadu_ps(s2 + y + 1), acc);
      acc = _mm256_fmadd_ps(w8, _mm256_loadu_ps(s2 + y + 2), acc);
      _mm256_storeu_ps(d + y, acc);
    }
    for (; y < y_n; ++y) {
      float acc = d[y];
      acc += w[0] * s0[y] + w[1] * s0[y + 1] + w[2] * s0[y + 2];
      acc += w[3] * s1[y] + w[4] * s1[y + 1] + w[5] * s1[y + 2];
      acc += w[6] * s2[y] + w[7] * s2[y + 1] + w[8] * s2[y + 2];
      d[y] = acc;
    }
  }
}

void stencil3x3_wgrad_f(const float* src, const float* dout, float* w9,
                        std::size_t x_n, std::size_t y_n, std::size_t stride) {
  __m256 acc[9];
  for (auto& a : acc) a = _mm256_setzero_ps();
  float tail[9] = {};
  for (std::size_t x = 0; x < x_n; ++x) {
    const float* s0 = src + (x - 1) * stride - 1;
    const float* s1 = s0 + stride;
    const float* s2 = s1 + stride;
    const float* g = dout + x * stride;
    std::size_t y = 0;
    for (; y + 8 <= y_n; y += 8) {
      const __m256 gv = _mm256_loadu_ps(g + y);
      acc[0] = _mm256_fmadd_ps(_mm256_loadu_ps(s0 + y), gv, acc[0]);
      acc[1] = _mm256_fmadd_ps(_mm256_loadu_ps(s0 + y + 1), gv, acc[1]);
      acc[2] = _mm256_fmadd_ps(_mm256_loadu_ps(s0 + y + 2), gv, acc[2]);
      acc[3] = _mm256_fmadd_ps(_mm256_loadu_ps(s1 + y), gv, acc[3]);
      acc[4] = _mm256_fmadd_ps(_mm256_loadu_ps(s1 + y + 1), gv, acc[4]);
      acc[5] = _mm256_fmadd_ps(_mm256_loadu_ps(s1 + y + 2), gv, acc[5]);
      acc[6] = _mm256_fmadd_ps(_mm256_loadu_ps(s2 + y), gv, acc[6]);
      acc[7] = _mm256_fmadd_ps(_mm256_loadu_ps(s2 + y + 1), gv, acc[7]);
      acc[8] = _mm256_fmadd_ps(_mm256_loadu_ps(s2 + y + 2), gv, acc[8]);
    }
    for (; y < y_n; ++y) {
      const float gv = g[y];
      tail[0] += s0[y] * gv;
      tail[1] += s0[y + 1] * gv;
      tail[2] += s0[y + 2] * gv;
      tail[3] += s1[y] * gv;
      tail[4] += s1[y + 1] * gv;
      tail[5] += s1[y + 2] * gv;
      tail[6] += s2[y] * gv;
      tail[7] += s2[y + 1] * gv;
      tail[8] += s2[y + 2] * gv;
    }
  }
  for (int k = 0; k < 9; ++k) w9[k] += hsum8(acc[k]) + tail[k];
}

// --------------------------------------------------------------- double ----

double dot_d(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double acc = hsum4(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_d(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void relu_d(const double* x, double* y, std::size_t n) {
  const __m256d z = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), z));
  for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_d(const double* act, const double* dy, double* dx, std::size_t n) {
  const __m256d z = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(act + i), z, _CMP_GT_OQ);
    _mm256_storeu_pd(dx + i, _mm256_and_pd(_mm256_loadu_pd(dy + i), mask));
  }
  for (; i < n; ++i) dx[i] = act[i] > 0.0 ? dy[i] : 0.0;
}

void adam_step_d(double* w, const double* g, double* m, double* v, std::size_t n,
                 double lr, double beta1, double beta2, double eps, double bias1,
                 double bias2) {
  // Double Adam only runs in gradient-check setups; the plain loop is enough.
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
    w[i] -= lr * (m[i] / bias1) / (std::sqrt(v[i] / bias2) + eps);
  }
}

void stencil3x3_d(const double* w, const double* src, double* dst, std::size_t x_n,
                  std::size_t y_n, std::size_t stride) {
  __m256d wv[9];
  for (int k = 0; k < 9; ++k) wv[k] = _mm256_set1_pd(w[k]);
  for (std::size_t x = 0; x < x_n; ++x) {
    const double* s0 = src + (x - 1) * stride - 1;
    const double* s1 = s0 + stride;
    const double* s2 = s1 + stride;
    double* d = dst + x * stride;
    std::size_t y = 0;
    for (; y + 4 <= y_n; y += 4) {
      __m256d acc = _mm256_loadu_pd(d + y);
      acc = _mm256_fmadd_pd(wv[0], _mm256_loadu_pd(s0 + y), acc);
      acc = _mm256_fmadd_pd(wv[1], _mm256_loadu_pd(s0 + y + 1), acc);
      acc = _mm256_fmadd_pd(wv[2], _mm256_loadu_pd(s0 + y + 2), acc);
      acc = _mm256_fmadd_pd(wv[3], _mm256_loadu_pd(s1 + y), acc);
      acc = _mm256_fmadd_pd(wv[4], _mm256_loadu_pd(s1 + y + 1), acc);
      acc = _mm256_fmadd_pd(wv[5], _mm256_loadu_pd(s1 + y + 2), acc);
      acc = _mm256_fmadd_pd(wv[6], _mm256_loadu_pd(s2 + y), acc);
      acc = _mm256_fmadd_pd(wv[7], _mm256_loadu_pd(s2 + y + 1), acc);
      acc = _mm256_fmadd_pd(wv[8], _mm256_loadu_pd(s2 + y + 2), acc);
      _mm256_storeu_pd(d + y, acc);
    }
    for (; y < y_n; ++y) {
      double acc = d[y];
      acc += w[0] * s0[y] + w[1] * s0[y + 1] + w[2] * s0[y + 2];
      acc += w[3] * s1[y] + w[4] * s1[y + 1] + w[5] * s1[y + 2];
      acc += w[6] * s2[y] + w[7] * s2[y + 1] + w[8] * s2[y + 2];
      d[y] = acc;
    }
  }
}

void stencil3x3_wgrad_d(const double* src, const double* dout, double* w9,
                        std::size_t x_n, std::size_t y_n, std::size_t stride) {
  double acc[9] = {};
  for (std::size_t x = 0; x < x_n; ++x) {
    const double* s0 = src + (x - 1) * stride - 1;
    const double* s1 = s0 + stride;
    const double* s2 = s1 + stride;
    const double* g = dout + x * stride;
    for (std::size_t y = 0; y < y_n; ++y) {
      const double gv = g[y];
      acc[0] += s0[y] * gv;
      acc[1] += s0[y + 1] * gv;
      acc[2] += s0[y + 2] * gv;
      acc[3] += s1[y] * gv;
      acc[4] += s1[y + 1] * gv;
      acc[5] += s1[y + 2] * gv;
      acc[6] += s2[y] * gv;
      acc[7] += s2[y + 1] * gv;
      acc[8] += s2[y + 2] * gv;
    }
  }
  for (int k = 0; k < 9; ++k) w9[k] += acc[k];
}

}  // namespace

template <>
const Kernels<float>& avx2_kernels<float>() {
  static const Kernels<float> table = {
      &dot_f,  &axpy_f,        &relu_f,          &relu_backward_f,
      &adam_step_f, &stencil3x3_f, &stencil3x3_wgrad_f, "avx2",
  };
  return table;
}

template <>
const Kernels<double>& avx2_kernels<double>() {
  static const Kernels<double> table = {
      &dot_d,  &axpy_d,        &relu_d,          &relu_backward_d,
      &adam_step_d, &stencil3x3_d, &stencil3x3_wgrad_d, "avx2",
  };
  return table;
}

}  // namespace svo::kern

#endif  // x86-64
