#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

// Scalar reference kernels. Written as straight loops so they double as the
// ground truth in the scalar-vs-SIMD equivalence tests.
namespace svo::kern::detail {

template <typename T>
T dot_scalar(const T* x, const T* y, std::size_t n) {
  T acc = T(0);
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

template <typename T>
void axpy_scalar(T a, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename T>
void relu_scalar(const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
}

template <typename T>
void relu_backward_scalar(const T* act, const T* dy, T* dx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dx[i] = act[i] > T(0) ? dy[i] : T(0);
}

template <typename T>
void adam_step_scalar(T* w, const T* g, T* m, T* v, std::size_t n, T lr,
                      T beta1, T beta2, T eps, T bias1, T bias2) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (T(1) - beta1) * g[i];
    v[i] = beta2 * v[i] + (T(1) - beta2) * g[i] * g[i];
    const T mhat = m[i] / bias1;
    const T vhat = v[i] / bias2;
    w[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

template <typename T>
void stencil3x3_scalar(const T* w, const T* src, T* dst, std::size_t x_n,
                       std::size_t y_n, std::size_t stride) {
  for (std::size_t x = 0; x < x_n; ++x) {
    const T* s0 = src + (x - 1) * stride - 1;  // halo row above, halo col left
    const T* s1 = s0 + stride;
    const T* s2 = s1 + stride;
    T* d = dst + x * stride;
    for (std::size_t y = 0; y < y_n; ++y) {
      T acc = d[y];
      acc += w[0] * s0[y] + w[1] * s0[y + 1] + w[2] * s0[y + 2];
      acc += w[3] * s1[y] + w[4] * s1[y + 1] + w[5] * s1[y + 2];
      acc += w[6] * s2[y] + w[7] * s2[y + 1] + w[8] * s2[y + 2];
      d[y] = acc;
    }
  }
}

template <typename T>
void stencil3x3_wgrad_scalar(const T* src, const T* dout, T* w9,
                             std::size_t x_n, std::size_t y_n,
                             std::size_t stride) {
  T acc[9] = {};
  for (std::size_t x = 0; x < x_n; ++x) {
    const T* s0 = src + (x - 1) * stride - 1;
    const T* s1 = s0 + stride;
    const T* s2 = s1 + stride;
    const T* g = dout + x * stride;
    for (std::size_t y = 0; y < y_n; ++y) {
      const T gv = g[y];
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

}  // namespace svo::kern::detail
