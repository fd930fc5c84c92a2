#include "condhaar/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace condhaar {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeltaBoundary = -0.5 + 1e-9;
}  // namespace

void TiltedLaw::validate() const {
  if (!(lambda >= 0.0)) throw std::invalid_argument("TiltedLaw: lambda must be >= 0");
  if (!(delta.real() > kDeltaBoundary))
    throw std::invalid_argument("TiltedLaw: Re(delta) must be > -1/2");
}

std::vector<Complex> sample_complex_sphere(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("sample_complex_sphere: dim must be >= 1");
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v[i] = Complex(re, im);
    norm2 += re * re + im * im;
  }
  if (norm2 == 0.0) return sample_complex_sphere(dim, rng);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return v;
}

std::vector<double> sample_real_sphere(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("sample_real_sphere: dim must be >= 1");
  std::vector<double> v(dim);
  double norm2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    v[i] = rng.normal();
    norm2 += v[i] * v[i];
  }
  if (norm2 == 0.0) return sample_real_sphere(dim, rng);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

double sample_beta(double a, double b, RngStream& rng) {
  if (!(a > 0.0)) throw std::invalid_argument("sample_beta: a must be > 0");
  if (!(b >= 0.0)) throw std::invalid_argument("sample_beta: b must be >= 0");
  if (b == 0.0) return 1.0;
  for (;;) {
    double x;
    if (a == 1.0) {
      x = 1.0 - std::pow(rng.uniform(), 1.0 / b);
    } else if (b == 1.0) {
      x = std::pow(rng.uniform(), 1.0 / a);
    } else {
      const double g1 = rng.gamma(a);
      const double g2 = rng.gamma(b);
      x = g1 / (g1 + g2);
    }
    if (x > 0.0 && x < 1.0) return x;  // reject endpoint hits
  }
}

double sample_fst(double s, double t, RngStream& rng) {
  if (!(s > 0.0) || !(t > 0.0)) throw std::invalid_argument("sample_fst: shapes must be > 0");
  return 1.0 - 2.0 * sample_beta(s, t, rng);
}

double sample_cospower_angle(double m, double d, RngStream& rng) {
  if (!(m > -0.5)) throw std::invalid_argument("sample_cospower_angle: m must be > -1/2");
  if (d == 0.0) {
    const double b = sample_beta(m + 0.5, m + 0.5, rng);
    return std::asin(2.0 * b - 1.0);
  }
  // Exponential twist by rejection against the symmetric d = 0 envelope.
  const double bound = std::exp(kPi * std::abs(d));
  for (;;) {
    const double phi = sample_cospower_angle(m, 0.0, rng);
    if (rng.uniform() * bound <= std::exp(-2.0 * d * phi)) return phi;
  }
}

namespace {

Complex sample_tilt_base(double lambda, RngStream& rng) {
  const double theta = rng.uniform(-kPi, kPi);
  const double r = std::sqrt(sample_beta(1.0, lambda, rng));
  return Complex(r * std::cos(theta), r * std::sin(theta));
}

}  // namespace

Complex sample_tilted_rejection(const TiltedLaw& law, RngStream& rng) {
  law.validate();
  const double m = law.delta.real();
  const double d = law.delta.imag();
  if (!(m >= 0.0))
    throw std::invalid_argument("sample_tilted_rejection: requires Re(delta) >= 0");
  if (m == 0.0 && d == 0.0) return sample_tilt_base(law.lambda, rng);
  // |1-x| <= 2 and |arg(1-x)| < pi/2, so the weight is bounded by the envelope.
  const double log_bound = 2.0 * m * std::log(2.0) + kPi * std::abs(d);
  for (;;) {
    const Complex x = sample_tilt_base(law.lambda, rng);
    const Complex one_minus = 1.0 - x;
    const double log_w = 2.0 * m * std::log(std::abs(one_minus)) + 2.0 * d * std::arg(one_minus);
    if (std::log(rng.uniform()) <= log_w - log_bound) return x;
  }
}

Complex sample_tilted_product(const TiltedLaw& law, RngStream& rng) {
  law.validate();
  const double m = law.delta.real();
  const double d = law.delta.imag();
  const double phi = sample_cospower_angle(law.lambda + m, -d, rng);
  const double b = sample_beta(law.lambda + 1.0 + 2.0 * m, law.lambda, rng);
  const double r = 2.0 * std::cos(phi) * b;
  return 1.0 - Complex(r * std::cos(phi), r * std::sin(phi));
}

Complex sample_tilted_coord(const TiltedLaw& law, RngStream& rng) {
  if (law.delta.imag() == 0.0 && law.delta.real() >= 0.0)
    return sample_tilted_rejection(law, rng);
  return sample_tilted_product(law, rng);
}

}  // namespace condhaar
