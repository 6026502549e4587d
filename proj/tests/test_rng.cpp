#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "povatlas/rng.hpp"

using namespace povatlas;

TEST_CASE("uniform stays in [0,1) and is roughly flat") {
  Rng rng(42);
  double sum = 0.0, sq = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sq += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sq / n == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("uniform(lo, hi) respects the interval") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform(-2.5, 4.0);
    REQUIRE(u >= -2.5);
    REQUIRE(u < 4.0);
  }
}

TEST_CASE("below is in range and unbiased enough") {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    auto v = rng.below(7);
    REQUIRE(v < 7);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts) CHECK(std::abs(c - n / 7) < 500);
}

TEST_CASE("in_disk stays inside and fills the area") {
  Rng rng(11);
  double r2sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto [x, y] = rng.in_disk(3.0);
    REQUIRE(x * x + y * y <= 9.0 + 1e-12);
    r2sum += x * x + y * y;
  }
  // E[r^2] = R^2/2 for a uniform disk
  CHECK(r2sum / n == doctest::Approx(4.5).epsilon(0.03));
}

TEST_CASE("shuffle permutes") {
  Rng rng(5);
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  auto orig = v;
  rng.shuffle(v);
  CHECK(v != orig);
  std::sort(v.begin(), v.end());
  CHECK(v == orig);
}

TEST_CASE("same seed gives the same stream") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("forks are stable and independent") {
  Rng base(99);
  Rng f1 = base.fork("retina");
  Rng f2 = base.fork("retina");
  CHECK(f1.seed() == f2.seed());
  CHECK(f1.uniform() == f2.uniform());

  CHECK(base.fork("retina").seed() != base.fork("object").seed());
  CHECK(base.fork("episode", 0).seed() != base.fork("episode", 1).seed());
  // forking does not consume from the parent stream
  Rng c(99), d(99);
  (void)c.fork("anything");
  CHECK(c.uniform() == d.uniform());
}
