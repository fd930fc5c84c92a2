#include <doctest.h>

#include <cmath>
#include <vector>

#include "condhaar/rng.hpp"
#include "condhaar/stats.hpp"

using namespace condhaar;

TEST_SUITE("stats") {
  TEST_CASE("mc_moment: constants, uniform variance, domain error") {
    std::vector<double> c(100, 3.14);
    const auto est = mc_moment(c);
    CHECK(est.value == doctest::Approx(3.14));
    CHECK(est.std_error == 0.0);
    CHECK(est.count == 100);
    std::vector<double> one{1.0};
    CHECK_THROWS_AS(mc_moment(one), std::invalid_argument);

    RngStream rng(71, 0);
    std::vector<double> u(100000);
    for (auto& x : u) x = rng.uniform();
    const auto m = mc_moment(u);
    CHECK(std::abs(m.value - 0.5) < 4.0 * m.std_error);
    CHECK(m.std_error ==
          doctest::Approx(1.0 / std::sqrt(12.0) / std::sqrt(100000.0)).epsilon(0.02));
  }

  TEST_CASE("mc_moment standard error scales as 1/sqrt(count)") {
    RngStream rng(72, 0);
    std::vector<double> big(40000);
    for (auto& x : big) x = rng.normal();
    const auto full = mc_moment(big);
    const auto quarter = mc_moment(std::span<const double>(big).subspan(0, 10000));
    CHECK(quarter.std_error / full.std_error == doctest::Approx(2.0).epsilon(0.1));
  }

  TEST_CASE("ks_two_sample: identity, null, shift, symmetry, monotone invariance") {
    RngStream rng(73, 0);
    std::vector<double> xs(10000), ys(10000), shifted(10000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
      shifted[i] = rng.uniform() + 0.5;
    }
    const auto same = ks_two_sample(xs, xs);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);

    CHECK(ks_two_sample(xs, ys).p_value > 0.01);
    CHECK(ks_two_sample(xs, shifted).p_value < 1e-10);
    CHECK(ks_two_sample(xs, ys).statistic == ks_two_sample(ys, xs).statistic);

    std::vector<double> ex(xs), ey(ys);
    for (auto& v : ex) v = std::exp(v);
    for (auto& v : ey) v = std::exp(v);
    CHECK(ks_two_sample(ex, ey).statistic == doctest::Approx(ks_two_sample(xs, ys).statistic));

    std::vector<double> tiny(10, 0.0);
    CHECK_THROWS_AS(ks_two_sample(tiny, xs), std::invalid_argument);
  }

  TEST_CASE("normality_check: normal passes, exponential fails, affine symmetry") {
    RngStream rng(74, 0);
    std::vector<double> normal(100000), expo(100000), affine(100000);
    for (std::size_t i = 0; i < normal.size(); ++i) {
      normal[i] = rng.normal();
      expo[i] = -std::log(rng.uniform());
      affine[i] = 3.0 - 2.0 * rng.normal();
    }
    const auto rep = normality_check(normal);
    CHECK(std::abs(rep.mean.value) < 4.0 * rep.mean.std_error);
    CHECK(std::abs(rep.variance.value - 1.0) < 4.0 * rep.variance.std_error);
    CHECK(rep.ks_p > 0.01);

    CHECK(normality_check(expo).ks_p < 1e-6);
    const auto aff = normality_check(affine);
    CHECK(std::abs(aff.skewness.value) < 4.0 * aff.skewness.std_error);

    std::vector<double> small(100, 0.0);
    CHECK_THROWS_AS(normality_check(small), std::invalid_argument);
  }

  TEST_CASE("tail_slope recovers synthetic exponents with the default window") {
    RngStream rng(75, 0);
    auto synthetic = [&](double a, long n) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = std::pow(rng.uniform(), 1.0 / (a + 1.0));
      return xs;
    };
    const auto flat = tail_slope(synthetic(0.0, 1000000));
    CHECK(std::abs(flat.slope - 0.0) < 0.1);
    const auto mid = tail_slope(synthetic(1.5, 1000000));
    CHECK(std::abs(mid.slope - 1.5) < 0.1);
    const auto steep = tail_slope(synthetic(2.0, 4000000));
    CHECK(std::abs(steep.slope - 2.0) < 0.1);

    std::vector<double> few(1000, 1.0);
    CHECK_THROWS_AS(tail_slope(few), std::invalid_argument);
  }

  TEST_CASE("tail_slope flags windows with too many empty bins") {
    RngStream rng(76, 0);
    // density ~ eps^6 empties the bottom of a two-decade window at this size
    std::vector<double> xs(200000);
    for (auto& x : xs) x = std::pow(rng.uniform(), 1.0 / 7.0);
    CHECK_THROWS_AS(tail_slope(xs), std::runtime_error);
  }

  TEST_CASE("corr: exact endpoints and the null scale") {
    RngStream rng(77, 0);
    std::vector<double> xs(100000), ys(100000), neg(100000);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = rng.normal();
      ys[i] = rng.normal();
      neg[i] = -xs[i];
    }
    CHECK(corr(xs, xs).r == doctest::Approx(1.0));
    CHECK(corr(xs, neg).r == doctest::Approx(-1.0));
    const auto null = corr(xs, ys);
    CHECK(std::abs(null.r) < 4.0 * null.std_error);
    CHECK(null.std_error == doctest::Approx(1.0 / std::sqrt(100000.0)));

    std::vector<double> shorter(50000, 0.0);
    CHECK_THROWS_AS(corr(xs, shorter), std::invalid_argument);
  }
}
