#include "svomerge/kernels/kernels.hpp"

#include "kernels_scalar.hpp"

namespace svo::kern {

template <typename T>
const Kernels<T>& scalar_kernels() {
  static const Kernels<T> table = {
      &detail::dot_scalar<T>,
      &detail::axpy_scalar<T>,
      &detail::relu_scalar<T>,
      &detail::relu_backward_scalar<T>,
      &detail::adam_step_scalar<T>,
      &detail::stencil3x3_scalar<T>,
      &detail::stencil3x3_wgrad_scalar<T>,
      "scalar",
  };
  return table;
}

template const Kernels<float>& scalar_kernels<float>();
template const Kernels<double>& scalar_kernels<double>();

}  // namespace svo::kern
