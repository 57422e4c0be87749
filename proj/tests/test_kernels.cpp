#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "svomerge/kernels/kernels.hpp"

using namespace svo;

namespace {

std::vector<float> random_vec(std::mt19937& gen, std::size_t n, float lo = -2.f,
                              float hi = 2.f) {
  std::uniform_real_distribution<float> dist(lo, hi);
  std::vector<float> v(n);
  for (auto& x : v) x = dist(gen);
  return v;
}

// padded plane helpers: interior x_n rows by y_n cols, halo of one cell
struct Plane {
  std::size_t x_n, y_n, stride;
  std::vector<float> buf;
  Plane(std::size_t x, std::size_t y)
      : x_n(x), y_n(y), stride(y + 2), buf((x + 2) * (y + 2), 0.f) {}
  float* interior() { return buf.data() + stride + 1; }
  const float* interior() const { return buf.data() + stride + 1; }
  float& at(std::size_t x, std::size_t y) { return interior()[x * stride + y]; }
  float at(std::size_t x, std::size_t y) const { return interior()[x * stride + y]; }
};

void fill_interior(Plane& p, std::mt19937& gen) {
  std::uniform_real_distribution<float> dist(-1.f, 1.f);
  for (std::size_t x = 0; x < p.x_n; ++x)
    for (std::size_t y = 0; y < p.y_n; ++y) p.at(x, y) = dist(gen);
}

// naive dense 3x3 correlation with zero padding, as the independent oracle
void naive_stencil(const float* w, const Plane& src, Plane& dst) {
  for (std::size_t x = 0; x < src.x_n; ++x)
    for (std::size_t y = 0; y < src.y_n; ++y) {
      double acc = dst.at(x, y);
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
          const long xx = static_cast<long>(x) + i;
          const long yy = static_cast<long>(y) + j;
          float s = 0.f;
          if (xx >= 0 && xx < static_cast<long>(src.x_n) && yy >= 0 &&
              yy < static_cast<long>(src.y_n))
            s = src.at(xx, yy);
          acc += w[(i + 1) * 3 + (j + 1)] * s;
        }
      dst.at(x, y) = static_cast<float>(acc);
    }
}

}  // namespace

TEST_CASE("scalar dot and axpy match plain loops") {
  const auto& k = kern::scalar_kernels<float>();
  std::mt19937 gen(7);
  for (std::size_t n : {0ul, 1ul, 5ul, 32ul, 333ul}) {
    auto x = random_vec(gen, n), y = random_vec(gen, n);
    double want = 0;
    for (std::size_t i = 0; i < n; ++i) want += double(x[i]) * y[i];
    CHECK(k.dot(x.data(), y.data(), n) ==
          doctest::Approx(want).epsilon(1e-5));

    auto y2 = y;
    k.axpy(0.5f, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y2[i] == doctest::Approx(y[i] + 0.5f * x[i]));
  }
}

TEST_CASE("scalar adam step matches a hand-computed update") {
  const auto& k = kern::scalar_kernels<float>();
  float w = 1.0f, g = 0.2f, m = 0.1f, v = 0.01f;
  const float lr = 0.001f, b1 = 0.9f, b2 = 0.999f, eps = 1e-8f;
  const float bias1 = 1.f - std::pow(b1, 3.f), bias2 = 1.f - std::pow(b2, 3.f);
  const float m1 = b1 * m + (1 - b1) * g;
  const float v1 = b2 * v + (1 - b2) * g * g;
  const float want = w - lr * (m1 / bias1) / (std::sqrt(v1 / bias2) + eps);
  k.adam_step(&w, &g, &m, &v, 1, lr, b1, b2, eps, bias1, bias2);
  CHECK(w == doctest::Approx(want));
  CHECK(m == doctest::Approx(m1));
  CHECK(v == doctest::Approx(v1));
}

TEST_CASE("stencil3x3 equals the naive zero-padded correlation") {
  std::mt19937 gen(11);
  const auto& k = kern::scalar_kernels<float>();
  for (auto [xn, yn] : {std::pair<std::size_t, std::size_t>{4, 4},
                        {7, 13},
                        {16, 32}}) {
    Plane src(xn, yn), dst(xn, yn), oracle(xn, yn);
    fill_interior(src, gen);
    fill_interior(dst, gen);
    oracle.buf = dst.buf;
    float w[9];
    for (auto& x : w) x = std::uniform_real_distribution<float>(-1, 1)(gen);

    k.stencil3x3(w, src.interior(), dst.interior(), xn, yn, src.stride);
    naive_stencil(w, src, oracle);
    for (std::size_t x = 0; x < xn; ++x)
      for (std::size_t y = 0; y < yn; ++y)
        CHECK(dst.at(x, y) == doctest::Approx(oracle.at(x, y)).epsilon(1e-4));
  }
}

TEST_CASE("stencil3x3_wgrad equals per-tap correlation sums") {
  std::mt19937 gen(13);
  const auto& k = kern::scalar_kernels<float>();
  const std::size_t xn = 6, yn = 10;
  Plane src(xn, yn), dout(xn, yn);
  fill_interior(src, gen);
  fill_interior(dout, gen);
  float got[9] = {};
  k.stencil3x3_wgrad(src.interior(), dout.interior(), got, xn, yn, src.stride);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      double want = 0;
      for (std::size_t x = 0; x < xn; ++x)
        for (std::size_t y = 0; y < yn; ++y) {
          const long xx = static_cast<long>(x) + i, yy = static_cast<long>(y) + j;
          if (xx < 0 || xx >= static_cast<long>(xn) || yy < 0 ||
              yy >= static_cast<long>(yn))
            continue;
          want += double(src.at(xx, yy)) * dout.at(x, y);
        }
      CHECK(got[(i + 1) * 3 + (j + 1)] ==
            doctest::Approx(want).epsilon(1e-4));
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kern::cpu_has_avx2()) return;
  const auto& s = kern::scalar_kernels<float>();
  const auto& a = kern::avx2_kernels<float>();
  std::mt19937 gen(17);

  for (std::size_t n : {1ul, 7ul, 8ul, 9ul, 31ul, 32ul, 100ul, 1023ul}) {
    auto x = random_vec(gen, n), y = random_vec(gen, n);

    CHECK(a.dot(x.data(), y.data(), n) ==
          doctest::Approx(s.dot(x.data(), y.data(), n)).epsilon(1e-4));

    auto y1 = y, y2 = y;
    s.axpy(1.7f, x.data(), y1.data(), n);
    a.axpy(1.7f, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));

    std::vector<float> r1(n), r2(n);
    s.relu(x.data(), r1.data(), n);
    a.relu(x.data(), r2.data(), n);
    CHECK(r1 == r2);

    std::vector<float> d1(n), d2(n);
    s.relu_backward(r1.data(), y.data(), d1.data(), n);
    a.relu_backward(r1.data(), y.data(), d2.data(), n);
    CHECK(d1 == d2);

    auto w1 = x, w2 = x;
    auto m1 = random_vec(gen, n, 0.f, 1.f), m2 = m1;
    auto v1 = random_vec(gen, n, 0.f, 1.f), v2 = v1;
    s.adam_step(w1.data(), y.data(), m1.data(), v1.data(), n, 0.01f, 0.9f,
                0.999f, 1e-8f, 0.1f, 0.001f);
    a.adam_step(w2.data(), y.data(), m2.data(), v2.data(), n, 0.01f, 0.9f,
                0.999f, 1e-8f, 0.1f, 0.001f);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(w1[i] == doctest::Approx(w2[i]).epsilon(1e-5));
  }

  for (auto [xn, yn] : {std::pair<std::size_t, std::size_t>{5, 6},
                        {8, 8},
                        {16, 30},
                        {32, 32}}) {
    Plane src(xn, yn), d1(xn, yn), d2(xn, yn);
    fill_interior(src, gen);
    fill_interior(d1, gen);
    d2.buf = d1.buf;
    float w[9];
    for (auto& x : w) x = std::uniform_real_distribution<float>(-1, 1)(gen);
    s.stencil3x3(w, src.interior(), d1.interior(), xn, yn, src.stride);
    a.stencil3x3(w, src.interior(), d2.interior(), xn, yn, src.stride);
    for (std::size_t x = 0; x < xn; ++x)
      for (std::size_t y = 0; y < yn; ++y)
        CHECK(d1.at(x, y) == doctest::Approx(d2.at(x, y)).epsilon(1e-4));

    float g1[9] = {}, g2[9] = {};
    s.stencil3x3_wgrad(src.interior(), d1.interior(), g1, xn, yn, src.stride);
    a.stencil3x3_wgrad(src.interior(), d1.interior(), g2, xn, yn, src.stride);
    for (int i = 0; i < 9; ++i)
      CHECK(g1[i] == doctest::Approx(g2[i]).epsilon(1e-4));
  }
}

TEST_CASE("double-precision avx2 kernels agree with scalar") {
  if (!kern::cpu_has_avx2()) return;
  const auto& s = kern::scalar_kernels<double>();
  const auto& a = kern::avx2_kernels<double>();
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (std::size_t n : {3ul, 8ul, 17ul, 255ul}) {
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = dist(gen);
    for (auto& v : y) v = dist(gen);
    CHECK(a.dot(x.data(), y.data(), n) ==
          doctest::Approx(s.dot(x.data(), y.data(), n)).epsilon(1e-12));
    auto y1 = y, y2 = y;
    s.axpy(0.3, x.data(), y1.data(), n);
    a.axpy(0.3, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]));
  }
}
#endif

TEST_CASE("runtime dispatch reports a valid table") {
  const auto& k = kern::active_kernels<float>();
  CHECK((std::string(k.name) == "scalar" || std::string(k.name) == "avx2"));
  CHECK(kern::active_kernel_name() == k.name);
  // the dispatched table computes, whatever it is
  const float x[3] = {1, 2, 3}, y[3] = {4, 5, 6};
  CHECK(k.dot(x, y, 3) == doctest::Approx(32.f));
}
