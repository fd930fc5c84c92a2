#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <sstream>

#include "condhaar/measures.hpp"
#include "condhaar/stats.hpp"

using namespace condhaar;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("measures") {
  TEST_CASE("haar sampler: n = 1 is the uniform circle") {
    RngStream rng(41, 0);
    Complex sum = 0.0;
    for (int i = 0; i < 50000; ++i) {
      const UnitaryMatrix u = sample_haar_unitary(1, rng);
      CHECK(std::abs(std::abs(u.entries(0, 0)) - 1.0) < 1e-12);
      sum += u.entries(0, 0);
    }
    CHECK(std::abs(sum) / 50000 < 4.0 / std::sqrt(50000.0));
  }

  TEST_CASE("unitarity contract holds on sampled matrices") {
    RngStream rng(42, 0);
    for (int i = 0; i < 60; ++i) {
      const int n = 2 + i % 7;
      const UnitaryMatrix u = sample_haar_unitary(n, rng);
      CHECK(u.unitarity_defect() <= 1e-10);
      CHECK_NOTHROW(u.validate());
    }
    UnitaryMatrix bad{Eigen::MatrixXcd::Identity(3, 3) * 1.5};
    CHECK_THROWS_AS(bad.validate(), std::runtime_error);
  }

  TEST_CASE("conditional sampler pins eigenvalue 1 and bounds the rank") {
    RngStream rng(43, 0);
    const UnitaryMatrix u = sample_conditional_haar(5, 2, rng);
    CHECK(eigenangles(u).pinned_multiplicity() >= 2);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd::Identity(5, 5) - u.entries);
    CHECK(svd.singularValues()(3) <= 1e-8);
    CHECK(svd.singularValues()(4) <= 1e-8);
    CHECK_THROWS_AS(sample_conditional_haar(4, 4, rng), std::invalid_argument);
  }

  TEST_CASE("p = 0 conditional equals the Haar product in law") {
    RngStream rng(44, 0);
    std::vector<double> a(6000), b(6000);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = sample_conditional_haar(4, 0, rng).entries.trace().real();
      b[i] = sample_haar_unitary(4, rng).entries.trace().real();
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
  }

  TEST_CASE("rotated representation: n = 1 uniform, n = 4 eigenangle marginal") {
    RngStream rng(45, 0);
    const UnitaryMatrix u1 = sample_rotated_conditional(1, rng);
    CHECK(std::abs(std::abs(u1.entries(0, 0)) - 1.0) < 1e-12);

    std::vector<double> a(5000), b(5000);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = eigenangles(sample_rotated_conditional(4, rng)).angles.front();
      b[i] = eigenangles(sample_haar_unitary(4, rng)).angles.front();
    }
    CHECK(ks_two_sample(a, b).p_value > 0.01);
  }

  TEST_CASE("generalized slip input validation") {
    RngStream rng(46, 0);
    CHECK_THROWS_AS(sample_generalized_slip(3, {0.1, 0.2, 0.3}, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_generalized_slip(4, {Complex(-0.6, 0.0)}, rng), std::invalid_argument);
    auto [first, second] = sample_generalized_slip(4, {Complex(1.0, 0.0)}, rng);
    CHECK_NOTHROW(first.validate());
    CHECK_NOTHROW(second.validate());
  }

  TEST_CASE("conditioning on |Z(1)| = x is exact and domain-checked") {
    RngStream rng(47, 0);
    CHECK_THROWS_AS(sample_conditioned_on_abs_z(3, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_conditioned_on_abs_z(3, 8.0, rng), std::invalid_argument);
    for (int i = 0; i < 20; ++i) {
      const auto s = sample_conditioned_on_abs_z(3, 0.7, rng);
      const Complex det =
          (Eigen::MatrixXcd::Identity(3, 3) - s.u.entries).partialPivLu().determinant();
      CHECK(std::abs(std::abs(det) - 0.7) < 1e-9);
      CHECK(s.pivots.size() == 3);
      CHECK(s.attempts >= 1);
    }
  }

  TEST_CASE("conditional orthogonal: p = n-1 spectrum lives in {1, -1}") {
    RngStream rng(48, 0);
    const Eigen::MatrixXd u = sample_conditional_orthogonal(4, 3, rng);
    const auto set = eigenangles(UnitaryMatrix{u.cast<Complex>()});
    for (double a : set.angles)
      CHECK((std::abs(a) < 1e-8 || std::abs(std::abs(a) - kPi) < 1e-8));
  }

  TEST_CASE("eigenangles: fixed spectra and charpoly consistency") {
    UnitaryMatrix id{Eigen::MatrixXcd::Identity(3, 3)};
    for (double a : eigenangles(id).angles) CHECK(a == 0.0);

    Eigen::MatrixXcd d(2, 2);
    d << Complex(0, 1), 0, 0, Complex(0, -1);
    const auto set = eigenangles(UnitaryMatrix{d});
    CHECK(set.angles[0] == doctest::Approx(-kPi / 2));
    CHECK(set.angles[1] == doctest::Approx(kPi / 2));

    Eigen::MatrixXcd refl(2, 2);
    refl << 0.6, 0.8, 0.8, -0.6;  // eigenvalues 1 and -1
    const auto rset = eigenangles(UnitaryMatrix{refl});
    CHECK(std::abs(rset.angles[0]) < 1e-8);
    CHECK(std::abs(rset.angles[1] - kPi) < 1e-8);

    RngStream rng(49, 0);
    const UnitaryMatrix u = sample_haar_unitary(5, rng);
    Complex from_angles = 1.0;
    for (double a : eigenangles(u).angles) from_angles *= 2.0 - std::polar(1.0, a);
    const Complex direct =
        (2.0 * Eigen::MatrixXcd::Identity(5, 5) - u.entries).partialPivLu().determinant();
    CHECK(std::abs(from_angles - direct) / std::abs(direct) < 1e-6);
  }

  TEST_CASE("matrix CSV dump round-trips") {
    RngStream rng(50, 0);
    const UnitaryMatrix u = sample_haar_unitary(3, rng);
    std::stringstream ss;
    write_matrix_csv(ss, u.entries);
    CHECK(ss.str().rfind("n,3\n", 0) == 0);
    const Eigen::MatrixXcd back = read_matrix_csv(ss);
    CHECK((back - u.entries).cwiseAbs().maxCoeff() == 0.0);
  }
}
