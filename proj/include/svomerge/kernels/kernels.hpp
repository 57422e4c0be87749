#pragma once

#include <cstddef>
#include <string>

namespace svo::kern {

// Dispatch table of the hot numeric primitives used by the Q-network math.
// Every entry has a scalar reference implementation; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The two variants
// are equivalence-tested against each other (see tests/test_kernels.cpp).
//
// 3x3 stencil kernels operate on "padded planes": a plane with x_n * y_n
// interior cells stored with one halo cell on every side, row stride
// y_n + 2. Pointers reference the first interior element and halos are
// required to be zero, so taps never need edge branches.
template <typename T>
struct Kernels {
  // sum_i x[i] * y[i]
  T (*dot)(const T* x, const T* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(T a, const T* x, T* y, std::size_t n);
  // y[i] = max(x[i], 0)
  void (*relu)(const T* x, T* y, std::size_t n);
  // dx[i] = act[i] > 0 ? dy[i] : 0, where act is the forward ReLU output
  void (*relu_backward)(const T* act, const T* dy, T* dx, std::size_t n);
  // Adam with bias correction; w, m, v updated in place.
  // bias1 = 1 - beta1^t, bias2 = 1 - beta2^t.
  void (*adam_step)(T* w, const T* g, T* m, T* v, std::size_t n, T lr,
                    T beta1, T beta2, T eps, T bias1, T bias2);
  // dst(x, y) += sum_{i,j in 0..2} w[3i+j] * src(x+i-1, y+j-1)
  void (*stencil3x3)(const T* w, const T* src, T* dst, std::size_t x_n,
                     std::size_t y_n, std::size_t stride);
  // w9[3i+j] += sum_{x,y} src(x+i-1, y+j-1) * dout(x, y)
  void (*stencil3x3_wgrad)(const T* src, const T* dout, T* w9,
                           std::size_t x_n, std::size_t y_n,
                           std::size_t stride);
  const char* name;
};

template <typename T>
const Kernels<T>& scalar_kernels();

// Table picked at startup: AVX2 when available, unless overridden by the
// environment variable SVOMERGE_KERNELS=scalar|avx2.
template <typename T>
const Kernels<T>& active_kernels();

std::string active_kernel_name();

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2();
template <typename T>
const Kernels<T>& avx2_kernels();  // only valid when cpu_has_avx2()
#endif

}  // namespace svo::kern
