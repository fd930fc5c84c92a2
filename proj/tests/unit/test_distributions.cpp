#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "condhaar/analytics.hpp"
#include "condhaar/distributions.hpp"
#include "condhaar/quadrature.hpp"
#include "condhaar/stats.hpp"

using namespace condhaar;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> draw(int n, const std::function<double(RngStream&)>& f, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> out(n);
  for (auto& x : out) x = f(rng);
  return out;
}

bool within_4se(const MomentEstimate& est, double target) {
  return std::abs(est.value - target) <= 4.0 * est.std_error;
}
}  // namespace

TEST_SUITE("distributions") {
  TEST_CASE("complex sphere: norm, degenerate dim, coordinate symmetry") {
    RngStream rng(2, 0);
    CHECK_THROWS_AS(sample_complex_sphere(0, rng), std::invalid_argument);

    auto one = sample_complex_sphere(1, rng);
    CHECK(std::abs(std::abs(one[0]) - 1.0) < 1e-12);

    double norm_worst = 0.0;
    std::vector<double> first_sq(20000);
    for (auto& v : first_sq) {
      auto x = sample_complex_sphere(4, rng);
      double n2 = 0.0;
      for (auto c : x) n2 += std::norm(c);
      norm_worst = std::max(norm_worst, std::abs(std::sqrt(n2) - 1.0));
      v = std::norm(x[0]);
    }
    CHECK(norm_worst < 1e-12);
    CHECK(within_4se(mc_moment(first_sq), 0.25));  // exchangeable coordinates summing to 1
  }

  TEST_CASE("complex sphere: |first coordinate|^2 is Beta(1, n-1)") {
    const int n = 5;
    auto xs = draw(8000,
                   [n](RngStream& r) { return std::norm(sample_complex_sphere(n, r)[0]); }, 3);
    const auto ks = ks_vs_cdf(xs, [n](double x) { return beta_cdf(1.0, n - 1.0, x); });
    CHECK(ks.p_value > 0.01);
  }

  TEST_CASE("real sphere: norm, signs at dim 1, partial sums of squares") {
    RngStream rng(4, 0);
    CHECK_THROWS_AS(sample_real_sphere(0, rng), std::invalid_argument);
    int plus = 0;
    for (int i = 0; i < 1000; ++i) {
      auto x = sample_real_sphere(1, rng);
      CHECK(std::abs(std::abs(x[0]) - 1.0) < 1e-12);
      if (x[0] > 0) ++plus;
    }
    CHECK(plus > 400);
    CHECK(plus < 600);

    auto first = draw(50000, [](RngStream& r) { return sample_real_sphere(3, r)[0]; }, 5);
    CHECK(within_4se(mc_moment(first), 0.0));

    // sum of squares of first k coordinates ~ Beta(k/2, (n-k)/2)
    const int n = 6, k = 2;
    auto ss = draw(8000,
                   [n, k](RngStream& r) {
                     auto x = sample_real_sphere(n, r);
                     double s = 0.0;
                     for (int i = 0; i < k; ++i) s += x[i] * x[i];
                     return s;
                   },
                   6);
    CHECK(ks_vs_cdf(ss, [](double x) { return beta_cdf(1.0, 2.0, x); }).p_value > 0.01);
  }

  TEST_CASE("beta: conventions, moments, domain errors") {
    RngStream rng(7, 0);
    CHECK_THROWS_AS(sample_beta(0.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_beta(1.0, -0.5, rng), std::invalid_argument);
    for (int i = 0; i < 100; ++i) CHECK(sample_beta(1.0, 0.0, rng) == 1.0);

    auto u = draw(100000, [](RngStream& r) { return sample_beta(1.0, 1.0, r); }, 8);
    CHECK(within_4se(mc_moment(u), 0.5));
    std::vector<double> usq(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) usq[i] = u[i] * u[i];
    CHECK(within_4se(mc_moment(usq), 1.0 / 3.0));  // Mellin transform at s = 2
  }

  TEST_CASE("f_{s,t}: symmetry, mean, second moment, beta transform") {
    auto sym = draw(100000, [](RngStream& r) { return sample_fst(2.0, 2.0, r); }, 9);
    CHECK(within_4se(mc_moment(sym), 0.0));

    auto xs = draw(100000, [](RngStream& r) { return sample_fst(1.0, 3.0, r); }, 10);
    CHECK(within_4se(mc_moment(xs), 0.5));  // (t-s)/(t+s)
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
    CHECK(within_4se(mc_moment(sq), 0.4));  // ((t-s)^2 + (t+s)) / ((t+s)(t+s+1))

    std::vector<double> tr(8000);
    for (std::size_t i = 0; i < tr.size(); ++i) tr[i] = 0.5 * (1.0 - xs[i]);
    CHECK(ks_vs_cdf(tr, [](double x) { return beta_cdf(1.0, 3.0, x); }).p_value > 0.01);

    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_fst(0.0, 1.0, rng), std::invalid_argument);
  }

  TEST_CASE("cos-power angle: uniform case, sine transform, twisted moment") {
    RngStream rng(11, 0);
    CHECK_THROWS_AS(sample_cospower_angle(-0.51, 0.0, rng), std::invalid_argument);

    auto sq = draw(100000,
                   [](RngStream& r) {
                     const double c = std::cos(sample_cospower_angle(0.0, 0.0, r));
                     return 4.0 * c * c;
                   },
                   12);
    CHECK(within_4se(mc_moment(sq), 2.0));

    // sin(phi) = 2 B_{m+1/2,m+1/2} - 1
    auto sines = draw(8000,
                      [](RngStream& r) {
                        return 0.5 * (std::sin(sample_cospower_angle(1.7, 0.0, r)) + 1.0);
                      },
                      13);
    CHECK(ks_vs_cdf(sines, [](double x) { return beta_cdf(2.2, 2.2, x); }).p_value > 0.01);

    auto twist = draw(100000,
                      [](RngStream& r) {
                        return std::cos(2.0 * sample_cospower_angle(1.0, 0.0, r));
                      },
                      14);
    CHECK(within_4se(mc_moment(twist), 0.5));  // Lemma A.3 value at z=1, t=0, s=2
  }

  TEST_CASE("tilted law: parameter validation") {
    CHECK_THROWS_AS(TiltedLaw(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TiltedLaw(1.0, Complex(-0.5, 0.3)), std::invalid_argument);
    CHECK_NOTHROW(TiltedLaw(0.0, Complex(-0.4, 2.0)));
  }

  TEST_CASE("tilted draw at delta = 0 is the plain base law") {
    auto sq = draw(8000,
                   [](RngStream& r) {
                     return std::norm(sample_tilted_coord(TiltedLaw(3.0, 0.0), r));
                   },
                   15);
    CHECK(ks_vs_cdf(sq, [](double x) { return beta_cdf(1.0, 3.0, x); }).p_value > 0.01);
  }

  TEST_CASE("tilted moments: ratio of closed forms") {
    // lambda = 1, delta = 1: E|1-Y|^2 = (10/3)/(3/2) = 20/9
    auto m = draw(200000,
                  [](RngStream& r) {
                    return std::norm(1.0 - sample_tilted_coord(TiltedLaw(1.0, 1.0), r));
                  },
                  16);
    CHECK(within_4se(mc_moment(m), 20.0 / 9.0));

    // circular base, delta = 1: E cos(arg Y) = -1/2 (quadrature of the tilted density)
    const double quad = integrate_1d(
        [](double t) { return std::cos(t) * (2.0 - 2.0 * std::cos(t)); }, -kPi, kPi, 1e-12) /
                        integrate_1d([](double t) { return 2.0 - 2.0 * std::cos(t); }, -kPi, kPi,
                                     1e-12);
    CHECK(quad == doctest::Approx(-0.5).epsilon(1e-9));
    auto c = draw(200000,
                  [](RngStream& r) {
                    return std::cos(std::arg(sample_tilted_coord(TiltedLaw(0.0, 1.0), r)));
                  },
                  17);
    CHECK(within_4se(mc_moment(c), quad));
  }

  TEST_CASE("rejection and product routes are KS-indistinguishable") {
    for (const Complex delta : {Complex(1.0, 0.0), Complex(0.5, 0.5)}) {
      for (const double lambda : {0.0, 1.0, 3.0}) {
        const TiltedLaw law(lambda, delta);
        auto re_a = draw(10000,
                         [&](RngStream& r) { return sample_tilted_rejection(law, r).real(); },
                         18);
        auto re_b = draw(10000,
                         [&](RngStream& r) { return sample_tilted_product(law, r).real(); }, 19);
        CHECK(ks_two_sample(re_a, re_b).p_value > 0.01);
        auto im_a = draw(10000,
                         [&](RngStream& r) { return sample_tilted_rejection(law, r).imag(); },
                         20);
        auto im_b = draw(10000,
                         [&](RngStream& r) { return sample_tilted_product(law, r).imag(); }, 21);
        CHECK(ks_two_sample(im_a, im_b).p_value > 0.01);
      }
    }
  }

  TEST_CASE("implemented densities integrate to one") {
    // f_{s,t} with an endpoint singularity at s = 1/2
    for (const auto& [s, t] : std::vector<std::pair<double, double>>{{0.5, 2.5}, {2.0, 3.0}}) {
      const double norm = std::exp((1.0 - s - t) * std::log(2.0) + std::lgamma(s + t) -
                                   std::lgamma(s) - std::lgamma(t));
      const double integral = integrate_1d(
          [&, s, t](double x) {
            return norm * std::pow(1.0 - x, s - 1.0) * std::pow(1.0 + x, t - 1.0);
          },
          -1.0, 1.0, 1e-10);
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
    // cos-power density: integral equals 1/c from the transform normalization
    const double m = 1.3, d = 0.4;
    const Complex z(m, -d);
    const double inv_c = std::exp(log_gamma(Complex(2.0 * m + 1.0)) - log_gamma(z + 1.0) -
                                  log_gamma(std::conj(z) + 1.0))
                             .real();
    const double integral = integrate_1d(
        [&](double phi) { return std::pow(2.0 * std::cos(phi), 2.0 * m) * std::exp(-2.0 * d * phi); },
        -kPi / 2.0, kPi / 2.0, 1e-10);
    CHECK(integral == doctest::Approx(inv_c).epsilon(1e-6));
    // tilted circular density normalization against the closed-form moment
    const double mean_weight = integrate_1d(
        [](double t) { return std::norm(1.0 - std::polar(1.0, t)); }, -kPi, kPi, 1e-10) /
                               (2.0 * kPi);
    CHECK(mean_weight == doctest::Approx(mf_one_plus_sphere_coord(0.0, 2.0, 0.0)).epsilon(1e-8));
  }
}
