#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "hlink/kernels.hpp"

using namespace hlink::kernels;

namespace {

const KernelTable* vector_table() {
#if defined(HLINK_WITH_AVX2)
  for (Backend b : available_backends()) {
    if (b == Backend::avx2) return &avx2_table();
  }
#endif
  return nullptr;
}

}  // namespace

TEST_CASE("scalar kernels on hand-checked inputs") {
  const KernelTable& s = scalar_table();
  std::uint64_t a[3] = {0b1100, 0, ~0ull}, b[3] = {0b1010, 7, ~0ull};
  s.xor_words(a, b, 3);
  CHECK(a[0] == 0b0110);
  CHECK(a[1] == 7);
  CHECK(a[2] == 0);

  std::uint32_t d[3] = {1, 2, 4}, src[3] = {4, 4, 4};
  s.axpy_mod(d, src, 3, 5, 3);  // (1+12)%5, (2+12)%5, (4+12)%5
  CHECK(d[0] == 3);
  CHECK(d[1] == 4);
  CHECK(d[2] == 1);

  // f(x, y) = 2 x^2 y - 3 at (1, 2) and (-0.5, 4)
  double coef[2] = {2.0, -3.0};
  std::uint8_t exps[4] = {2, 1, 0, 0};
  PolynomialView poly{coef, exps, 2, 2};
  double xs[2] = {1.0, -0.5}, ys[2] = {2.0, 4.0};
  const double* axes[2] = {xs, ys};
  double out[2];
  s.eval_polynomial(poly, axes, 2, out);
  CHECK(out[0] == 1.0);
  CHECK(out[1] == -1.0);
}

TEST_CASE("available backends always include scalar and force_backend round-trips") {
  auto backs = available_backends();
  REQUIRE(!backs.empty());
  CHECK(backs.front() == Backend::scalar);
  const Backend before = active().backend;
  CHECK(force_backend(Backend::scalar));
  CHECK(active().backend == Backend::scalar);
  force_backend(before);
  CHECK(active().backend == before);
}

TEST_CASE("vector kernels agree bit-for-bit with the scalar reference") {
  const KernelTable* v = vector_table();
  if (!v) {
    MESSAGE("no vector backend on this machine; equivalence test skipped");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng() % 70;  // exercises tails
    std::vector<std::uint64_t> a(n), b(n);
    for (auto& x : a) x = rng();
    for (auto& x : b) x = rng();
    auto a2 = a;
    s.xor_words(a.data(), b.data(), n);
    v->xor_words(a2.data(), b.data(), n);
    CHECK(a == a2);

    const std::uint32_t primes[] = {2, 3, 5, 7, 101, 12289, 46337};
    std::uint32_t p = primes[rng() % 7];
    std::vector<std::uint32_t> d(n), src(n);
    for (auto& x : d) x = static_cast<std::uint32_t>(rng() % p);
    for (auto& x : src) x = static_cast<std::uint32_t>(rng() % p);
    const auto scale = static_cast<std::uint32_t>(rng() % p);
    auto d2 = d;
    s.axpy_mod(d.data(), src.data(), scale, p, n);
    v->axpy_mod(d2.data(), src.data(), scale, p, n);
    CHECK(d == d2);

    const std::size_t dim = 1 + rng() % 5, terms = rng() % 9;
    std::vector<double> coef(terms);
    std::vector<std::uint8_t> exps(terms * dim);
    std::uniform_real_distribution<double> u(-3, 3);
    for (auto& c : coef) c = u(rng);
    for (auto& e : exps) e = static_cast<std::uint8_t>(rng() % 5);
    std::vector<std::vector<double>> axes(dim, std::vector<double>(n));
    std::vector<const double*> ptr(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (auto& x : axes[i]) x = u(rng);
      ptr[i] = axes[i].data();
    }
    PolynomialView poly{coef.data(), exps.data(), terms, dim};
    std::vector<double> o1(n), o2(n);
    s.eval_polynomial(poly, ptr.data(), n, o1.data());
    v->eval_polynomial(poly, ptr.data(), n, o2.data());
    CHECK(std::memcmp(o1.data(), o2.data(), n * sizeof(double)) == 0);
  }
}
