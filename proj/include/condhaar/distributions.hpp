#pragma once

#include <complex>
#include <vector>

#include "condhaar/rng.hpp"

namespace condhaar {

using Complex = std::complex<double>;

//! Parameters (lambda, delta) of a tilted first-coordinate law.
//!
//! The base variable is x = e^{i theta} sqrt(B_{1,lambda}) with theta uniform
//! on (-pi, pi); lambda = 0 degenerates to the uniform law on the unit circle
//! (B_{1,0} == 1). The tilted law reweights the base by the positive weight
//! (1-x)^{conj(delta)} (1-conj(x))^{delta}, which requires Re(delta) > -1/2
//! for a finite normalization.
struct TiltedLaw {
  double lambda = 0.0;
  Complex delta = 0.0;

  TiltedLaw() = default;
  TiltedLaw(double lambda_in, Complex delta_in) : lambda(lambda_in), delta(delta_in) { validate(); }

  void validate() const;
};

//! Uniform point on the complex unit sphere of the given dimension.
std::vector<Complex> sample_complex_sphere(int dim, RngStream& rng);

//! Uniform point on the real unit sphere of the given dimension.
std::vector<double> sample_real_sphere(int dim, RngStream& rng);

//! Beta(a, b) variate in (0, 1); b = 0 returns exactly 1 by convention.
double sample_beta(double a, double b, RngStream& rng);

//! Variate with density f_{s,t}(x) ∝ (1-x)^{s-1} (1+x)^{t-1} on (-1, 1).
double sample_fst(double s, double t, RngStream& rng);

//! Angle in (-pi/2, pi/2) with density ∝ (2 cos phi)^{2m} e^{-2 d phi}.
//! Requires m > -1/2. For d = 0 the law satisfies sin(phi) = 2B_{m+1/2,m+1/2} - 1.
double sample_cospower_angle(double m, double d, RngStream& rng);

//! Tilted first coordinate; dispatches between the two exact routes below.
Complex sample_tilted_coord(const TiltedLaw& law, RngStream& rng);

//! Rejection route: weight |1-x|^{2 Re delta} e^{2 Im delta arg(1-x)} against
//! the sharp envelope 4^{Re delta} e^{pi |Im delta|}. Exact for Re delta >= 0.
Complex sample_tilted_rejection(const TiltedLaw& law, RngStream& rng);

//! Product route: 1 - Y = 2 cos(phi) e^{i phi} B_{lambda+1+2Re delta, lambda}
//! with phi a cos-power angle. Exact whenever the beta parameters are positive,
//! which holds for every admissible (lambda >= 0, Re delta > -1/2).
Complex sample_tilted_product(const TiltedLaw& law, RngStream& rng);

}  // namespace condhaar
