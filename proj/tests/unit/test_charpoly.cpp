#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "condhaar/charpoly.hpp"
#include "condhaar/stats.hpp"

using namespace condhaar;

namespace {
constexpr double kPi = std::numbers::pi;

// test oracle: monic polynomial coefficients from roots, ascending powers
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// test oracle: order-th derivative at x via direct coefficient differentiation
Complex poly_derivative_at(std::vector<Complex> c, int order, Complex x) {
  for (int d = 0; d < order; ++d) {
    std::vector<Complex> next(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) next[i - 1] = static_cast<double>(i) * c[i];
    c = std::move(next);
  }
  Complex acc = 0.0, power = 1.0;
  for (const Complex& coef : c) {
    acc += coef * power;
    power *= x;
  }
  return acc;
}
}  // namespace

TEST_SUITE("charpoly") {
  TEST_CASE("determinant product identity and pivot-order guard") {
    RngStream rng(61, 0);
    Eigen::VectorXcd single(1);
    single << Complex(0.2, std::sqrt(0.96));
    const Reflection r1 = reflection_from_column(1, 1, single);
    CHECK(std::abs(det_id_minus_product(std::vector<Reflection>{r1}) -
                   (1.0 - single(0))) < 1e-15);

    const int n = 4;
    std::vector<Reflection> refl;
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
    for (int k = n; k >= 1; --k) {
      refl.push_back(sample_nu(n, k, rng));
      apply_left(refl.back(), prod);
    }
    std::reverse(refl.begin(), refl.end());
    const Complex direct =
        (Eigen::MatrixXcd::Identity(n, n) - prod).partialPivLu().determinant();
    CHECK(std::abs(det_id_minus_product(refl) - direct) <= 1e-9 * n);

    // short product: the direct determinant vanishes by rank deficiency
    std::vector<Reflection> shortprod;
    Eigen::MatrixXcd prod5 = Eigen::MatrixXcd::Identity(5, 5);
    for (int k = 3; k >= 1; --k) {
      shortprod.push_back(sample_nu(5, k, rng));
      apply_left(shortprod.back(), prod5);
    }
    std::reverse(shortprod.begin(), shortprod.end());
    CHECK(std::abs((Eigen::MatrixXcd::Identity(5, 5) - prod5).partialPivLu().determinant()) <
          1e-9);

    std::swap(shortprod[0], shortprod[1]);
    CHECK_THROWS_AS(det_id_minus_product(shortprod), std::invalid_argument);
  }

  TEST_CASE("z_derivative: direct values and the conditioning guard") {
    CHECK(std::abs(z_derivative(EigenangleSet{{kPi, kPi, 0.0}}, 1) - Complex(4.0)) < 1e-12);
    CHECK_THROWS_AS(z_derivative(EigenangleSet{{0.5, 1.0}}, 1), std::runtime_error);

    RngStream rng(62, 0);
    const UnitaryMatrix u = sample_haar_unitary(4, rng);
    const auto set = eigenangles(u);
    const Complex direct =
        (Eigen::MatrixXcd::Identity(4, 4) - u.entries).partialPivLu().determinant();
    CHECK(std::abs(z_derivative(set, 0) - direct) < 1e-9);
  }

  TEST_CASE("z_derivative matches the polynomial-derivative oracle") {
    RngStream rng(63, 0);
    const int n = 6, p = 2;
    for (int trial = 0; trial < 20; ++trial) {
      const auto set = eigenangles(sample_conditional_haar(n, p, rng));
      std::vector<Complex> roots;
      for (double a : set.angles) roots.push_back(std::polar(1.0, a));
      const Complex oracle = poly_derivative_at(poly_from_roots(roots), p, 1.0);
      const Complex z = z_derivative(set, p);
      CHECK(std::abs(z - oracle) / std::abs(oracle) < 1e-6);
    }
  }

  TEST_CASE("log_z: fixed values, branch bound, exp consistency") {
    const Complex two_pi_angles = log_z(EigenangleSet{{kPi, kPi}}, 0);
    CHECK(two_pi_angles.real() == doctest::Approx(std::log(4.0)));
    CHECK(two_pi_angles.imag() == doctest::Approx(0.0));

    const Complex quarter = log_z(EigenangleSet{{kPi / 2}}, 0);
    CHECK(quarter.real() == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(quarter.imag() == doctest::Approx(-kPi / 4));

    RngStream rng(64, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto set = eigenangles(sample_conditional_haar(5, 1, rng));
      const Complex lz = log_z(set, 1);
      CHECK(std::abs(lz.imag()) < (set.size() - 1) * kPi / 2);
      CHECK(std::abs(std::exp(lz) - z_derivative(set, 1)) /
                std::abs(z_derivative(set, 1)) <
            1e-8);
    }
  }

  TEST_CASE("product route: n = 1 second moment and route equivalence at p = 0") {
    RngStream rng(65, 0);
    std::vector<double> sq(100000);
    for (auto& x : sq) x = std::norm(sample_z_product_unitary(1, 0, rng));
    const auto est = mc_moment(sq);
    CHECK(std::abs(est.value - 2.0) < 4.0 * est.std_error);

    std::vector<double> a(5000), b(5000);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = std::abs(z_derivative(eigenangles(sample_haar_unitary(5, rng)), 0));
      b[i] = std::abs(sample_z_product_unitary(5, 0, rng));
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);

    // log variant agrees with the plain product in law (same factors)
    std::vector<double> c(5000), d(5000);
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = std::abs(sample_z_product_unitary(6, 1, rng));
      d[i] = std::exp(sample_log_z_product_unitary(6, 1, rng).real());
    }
    CHECK(ks_two_sample(c, d).p_value > 0.01);
  }

  TEST_CASE("schedules: printed examples and parameter correspondence") {
    const auto g = alpha_schedule_general(2.0, 0.0, 0.0, 2);
    REQUIRE(g.count() == 3);
    CHECK(g.pairs[0] == std::pair{2.0, 2.0});
    CHECK(g.pairs[1] == std::pair{2.0, 1.0});
    CHECK(g.pairs[2] == std::pair{1.0, 1.0});

    const auto one = alpha_schedule_general(2.0, 0.5, 1.5, 1);
    REQUIRE(one.count() == 1);
    CHECK(one.pairs[0] == std::pair{1.5, 2.5});

    const auto so = alpha_schedule_group(CompactGroup::SO, 2, 0, 0);
    CHECK(so.pairs[0] == std::pair{1.5, 1.5});
    CHECK(so.pairs[1] == std::pair{1.0, 1.0});
    CHECK(so.pairs[2] == std::pair{0.5, 0.5});

    CHECK_THROWS_AS(alpha_schedule_general(2.0, -1.5, 0.0, 2), std::invalid_argument);
  }

  TEST_CASE("jacobi pair: per-sample identities and symmetric means") {
    RngStream rng(66, 0);
    const auto sched = alpha_schedule_general(2.0, 0.5, 0.5, 1);
    double mean_plus = 0.0, mean_minus = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const auto d = sample_jacobi_det_pair(sched, rng);
      const double alpha0 = 1.0 - d.z_plus / 2.0;
      CHECK(std::abs(d.z_plus * d.z_minus - 4.0 * (1.0 - alpha0 * alpha0)) < 1e-12);
      CHECK(d.z_plus * d.z_minus <= 4.0 + 1e-12);
      mean_plus += d.z_plus;
      mean_minus += d.z_minus;
    }
    CHECK(std::abs(mean_plus / 100000 - 2.0) < 0.02);
    CHECK(std::abs(mean_minus / 100000 - 2.0) < 0.02);
  }

  TEST_CASE("jacobi n = 1: uniform case and beta-mean route") {
    RngStream rng(67, 0);
    std::vector<double> u(8000);
    for (auto& x : u) x = sample_jacobi_n1(0.0, 0.0, rng);
    CHECK(ks_vs_cdf(u, [](double x) {
            return std::clamp((x + 2.0) / 4.0, 0.0, 1.0);
          }).p_value > 0.01);

    std::vector<double> xs(100000);
    for (auto& x : xs) x = 2.0 - sample_jacobi_n1(1.5, -0.5, rng);
    const auto est = mc_moment(xs);
    CHECK(std::abs(est.value - 10.0 / 3.0) < 4.0 * est.std_error);  // 4(a+1)/(a+b+2)
    CHECK(2.0 * (1.0 - fst_mean(2.5, 0.5)) == doctest::Approx(10.0 / 3.0));
  }

  TEST_CASE("group derivative normalization via explicit polynomial differentiation") {
    // n = 1, p+ = p- = 1: P(x) = (x-1)^2 (x+1)^2 (x - e^{i t})(x - e^{-i t})
    RngStream rng(68, 0);
    for (int trial = 0; trial < 10; ++trial) {
      const double theta = rng.uniform(0.0, kPi);
      const double x = 2.0 * std::cos(theta);
      const std::vector<Complex> roots{1.0, 1.0, -1.0, -1.0, std::polar(1.0, theta),
                                       std::polar(1.0, -theta)};
      const auto coeffs = poly_from_roots(roots);
      const Complex d_plus = poly_derivative_at(coeffs, 2, 1.0);
      const Complex d_minus = poly_derivative_at(coeffs, 2, -1.0);
      // Z^(2p+)(1) = (2p+)! 2^{2p-} (2 - x) and Z^(2p-)(-1) = (2p-)! 2^{2p+} (2 + x)
      CHECK(d_plus.real() / (2.0 * 4.0) == doctest::Approx(2.0 - x).epsilon(1e-10));
      CHECK(std::abs(d_plus.imag()) < 1e-10);
      CHECK(d_minus.real() / (2.0 * 4.0) == doctest::Approx(2.0 + x).epsilon(1e-10));
    }
  }

  TEST_CASE("so_usp pair: n = 1 mean and schedule shift between groups") {
    RngStream rng(69, 0);
    std::vector<double> plus(100000);
    for (auto& x : plus) x = so_usp_derivative_pair(CompactGroup::SO, 1, 0, 0, rng).z_plus;
    const auto est = mc_moment(plus);
    CHECK(std::abs(est.value - 2.0) < 4.0 * est.std_error);  // 4 (a+1)/(a+b+2) at a=b=-1/2

    const auto so = alpha_schedule_group(CompactGroup::SO, 3, 1, 2);
    const auto usp = alpha_schedule_group(CompactGroup::USp, 3, 1, 2);
    const auto so_gen = alpha_schedule_general(2.0, 2.0 - 0.5, 4.0 - 0.5, 3);
    const auto usp_gen = alpha_schedule_general(2.0, 2.0 + 0.5, 4.0 + 0.5, 3);
    for (int k = 0; k < so.count(); ++k) {
      CHECK(so.pairs[k].first == doctest::Approx(so_gen.pairs[k].first).epsilon(1e-14));
      CHECK(so.pairs[k].second == doctest::Approx(so_gen.pairs[k].second).epsilon(1e-14));
      CHECK(usp.pairs[k].first == doctest::Approx(usp_gen.pairs[k].first).epsilon(1e-14));
      CHECK(usp.pairs[k].second == doctest::Approx(usp_gen.pairs[k].second).epsilon(1e-14));
    }
  }
}
