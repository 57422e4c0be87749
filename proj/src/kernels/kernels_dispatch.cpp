#include <cstdlib>
#include <string>

#include "svomerge/kernels/kernels.hpp"

namespace svo::kern {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
}
#endif

namespace {

bool use_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool choice = [] {
    if (const char* env = std::getenv("SVOMERGE_KERNELS")) {
      const std::string v(env);
      if (v == "scalar") return false;
      if (v == "avx2") return true;  // caller asked for it; cpuid still gates
    }
    return cpu_has_avx2();
  }() && cpu_has_avx2();
  return choice;
#else
  return false;
#endif
}

}  // namespace

template <typename T>
const Kernels<T>& active_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
  if (use_avx2()) return avx2_kernels<T>();
#endif
  return scalar_kernels<T>();
}

std::string active_kernel_name() { return active_kernels<float>().name; }

template const Kernels<float>& active_kernels<float>();
template const Kernels<double>& active_kernels<double>();

}  // namespace svo::kern
