#include <doctest.h>

#include <cmath>
#include <vector>

#include "condhaar/rng.hpp"

using namespace condhaar;

TEST_SUITE("rng") {
  TEST_CASE("equal (seed, stream) replays bit for bit") {
    RngStream a(123, 5), b(123, 5);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(123, 5), d(123, 5);
    for (int i = 0; i < 100; ++i) {
      CHECK(c.uniform() == d.uniform());
      CHECK(c.normal() == d.normal());
      CHECK(c.gamma(2.5) == d.gamma(2.5));
    }
  }

  TEST_CASE("distinct stream indices decorrelate") {
    RngStream a(123, 0), b(123, 1);
    int agree = 0;
    for (int i = 0; i < 1000; ++i)
      if (a.next_u64() == b.next_u64()) ++agree;
    CHECK(agree == 0);
  }

  TEST_CASE("uniform stays inside the open interval") {
    RngStream rng(9, 0);
    for (int i = 0; i < 100000; ++i) {
      const double u = rng.uniform();
      CHECK(u > 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("normal and gamma match their first two moments") {
    RngStream rng(17, 0);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0, g1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      s1 += x;
      s2 += x * x;
      g1 += rng.gamma(3.7);
    }
    CHECK(std::abs(s1 / n) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(g1 / n - 3.7) < 4.0 * std::sqrt(3.7 / n));
  }

  TEST_CASE("gamma rejects nonpositive shape") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(rng.gamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(rng.gamma(-1.0), std::invalid_argument);
  }
}
