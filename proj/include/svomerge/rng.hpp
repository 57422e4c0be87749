#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace svo {

// mt19937_64 with hand-rolled distributions. The standard distribution
// objects are implementation-defined, so logs and training traces would not
// reproduce across standard libraries; these do.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // modulo bias is negligible for n << 2^64 (n here is at most a few thousand)
    return gen_() % n;
  }

  // standard normal via Box-Muller (one value per call; no cached spare so
  // state advances predictably)
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double std) { return mean + std * normal(); }

  // Gaussian clipped to [lo, hi]
  double clipped_normal(double mean, double std, double lo, double hi) {
    const double v = normal(mean, std);
    return v < lo ? lo : (v > hi ? hi : v);
  }

  std::string serialize() const {
    std::ostringstream os;
    os << gen_;
    return os.str();
  }

  void deserialize(const std::string& s) {
    std::istringstream is(s);
    is >> gen_;
  }

  // stream splitting: derive an independent seed for a substream
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace svo
