#include "condhaar/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace condhaar {

namespace {
constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

void check_pole(double x, const char* who) {
  if (!(x > 0.0)) throw std::invalid_argument(std::string(who) + ": gamma argument at or past a pole");
}
}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // reflection formula
    return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double trigamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("trigamma: requires x > 0");
  double acc = 0.0;
  while (x < 6.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  return acc + inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0)));
}

namespace {
// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16, kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}
}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete_beta: shapes must be > 0");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete_beta: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double beta_mellin(double a, double b, double s) {
  check_pole(a, "beta_mellin");
  if (!(b >= 0.0)) throw std::invalid_argument("beta_mellin: b must be >= 0");
  if (s == 0.0) return 1.0;
  if (b == 0.0) return 1.0;  // B_{a,0} == 1
  check_pole(a + s, "beta_mellin");
  return std::exp(std::lgamma(a + s) - std::lgamma(a) + std::lgamma(a + b) -
                  std::lgamma(a + b + s));
}

double mf_one_plus_sphere_coord(double lambda, double t, double s) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("mf_one_plus_sphere_coord: lambda must be >= 0");
  const double l1 = lambda + 1.0;
  check_pole(l1 + t, "mf_one_plus_sphere_coord");
  check_pole(l1 + 0.5 * (t + s), "mf_one_plus_sphere_coord");
  check_pole(l1 + 0.5 * (t - s), "mf_one_plus_sphere_coord");
  return std::exp(std::lgamma(l1) + std::lgamma(l1 + t) - std::lgamma(l1 + 0.5 * (t + s)) -
                  std::lgamma(l1 + 0.5 * (t - s)));
}

double mf_cospower(Complex z, double t, double s) {
  if (!(z.real() > -0.5)) throw std::invalid_argument("mf_cospower: Re(z) must be > -1/2");
  const Complex zb = std::conj(z);
  const double zz = 2.0 * z.real();
  check_pole(zz + 1.0, "mf_cospower");
  check_pole(zz + t + 1.0, "mf_cospower");
  const Complex acc = log_gamma(z + 1.0) + log_gamma(zb + 1.0) - log_gamma(Complex(zz + 1.0)) +
                      log_gamma(Complex(zz + t + 1.0)) - log_gamma(zb + 0.5 * (t + s) + 1.0) -
                      log_gamma(z + 0.5 * (t - s) + 1.0);
  return std::exp(acc).real();
}

double tilted_mf(double lambda, Complex delta, double t, double s) {
  TiltedLaw(lambda, delta);  // validate parameters
  const double L = lambda + 1.0;
  const Complex d = delta, db = std::conj(delta);
  const double dd = 2.0 * delta.real();
  check_pole(L + dd, "tilted_mf");
  check_pole(L + t + dd, "tilted_mf");
  const Complex acc = log_gamma(L + d) + log_gamma(L + db) - log_gamma(Complex(L + dd)) +
                      log_gamma(Complex(L + t + dd)) - log_gamma(L + 0.5 * (t + s) + db) -
                      log_gamma(L + 0.5 * (t - s) + d);
  return std::exp(acc).real();
}

double mf_theorem_a1_target(double lambda, Complex delta, double t, double s) {
  if (!(lambda > 1.0)) throw std::invalid_argument("mf_theorem_a1_target: lambda must be > 1");
  return tilted_mf(lambda - 1.0, delta + 1.0, t, s);
}

double weyl_density_unitary(std::span<const double> angles) {
  const int n = static_cast<int>(angles.size());
  double prod = 1.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      prod *= std::norm(std::polar(1.0, angles[k]) - std::polar(1.0, angles[l]));
  double fact = 1.0;
  for (int j = 2; j <= n; ++j) fact *= j;
  return prod / fact;
}

double conditional_density_unitary(std::span<const double> angles, int p) {
  if (p < 0) throw std::invalid_argument("conditional_density_unitary: p must be >= 0");
  const int n = static_cast<int>(angles.size());
  double prod = 1.0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l)
      prod *= std::norm(std::polar(1.0, angles[k]) - std::polar(1.0, angles[l]));
    prod *= std::pow(std::norm(1.0 - std::polar(1.0, angles[k])), p);
  }
  return prod;
}

double jacobi_density(std::span<const double> xs, double beta, double a, double b) {
  const int n = static_cast<int>(xs.size());
  double vandermonde = 1.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) vandermonde *= std::abs(xs[k] - xs[l]);
  double edge = 1.0;
  for (int j = 0; j < n; ++j) edge *= std::pow(2.0 - xs[j], a) * std::pow(2.0 + xs[j], b);
  return std::pow(vandermonde, beta) * edge;
}

double so_usp_density(std::span<const double> angles, CompactGroup group) {
  const int n = static_cast<int>(angles.size());
  double prod = 1.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const double d = std::cos(angles[k]) - std::cos(angles[l]);
      prod *= d * d;
    }
  if (group == CompactGroup::USp)
    for (int j = 0; j < n; ++j)
      prod *= (1.0 - std::cos(angles[j])) * (1.0 + std::cos(angles[j]));
  return prod;
}

double expected_sq_modulus_zp(int n, int p) {
  if (p < 0 || p > n - 1) throw std::invalid_argument("expected_sq_modulus_zp: requires 0 <= p <= n-1");
  // G(lambda, q) = Gamma(lambda+1) Gamma(lambda+1+2q) / Gamma(lambda+1+q)^2
  double acc = 0.0;
  for (int l = 1; l <= n - p; ++l) {
    const double lam = l - 1.0;
    acc += std::lgamma(lam + 1.0 + 2.0 * (p + 1.0)) - 2.0 * std::lgamma(lam + 2.0 + p) -
           std::lgamma(lam + 1.0 + 2.0 * p) + 2.0 * std::lgamma(lam + 1.0 + p);
  }
  return std::exp(acc);
}

double fst_mean(double s, double t) { return (t - s) / (t + s); }

double fst_second_moment(double s, double t) {
  const double st = s + t, d = t - s;
  return (d * d + st) / (st * (st + 1.0));
}

double log_two_beta_mean(double s, double t) {
  return std::log(2.0) + digamma(s) - digamma(s + t);
}

double log_two_beta_var(double s, double t) { return trigamma(s) - trigamma(s + t); }

}  // namespace condhaar
