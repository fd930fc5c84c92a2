#pragma once

#include <complex>
#include <span>

#include "condhaar/distributions.hpp"

namespace condhaar {

enum class CompactGroup { SO, USp };

// -- special functions (log-gamma based throughout; arguments can exceed 100) --

//! Principal branch log Gamma for complex arguments (Lanczos + reflection).
Complex log_gamma(Complex z);

//! Digamma and trigamma for positive real arguments.
double digamma(double x);
double trigamma(double x);

//! Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

//! Beta(a, b) cumulative distribution function at x.
inline double beta_cdf(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return incomplete_beta(a, b, x);
}

// -- closed-form transforms --

//! Mellin transform of a beta variable: E[B_{a,b}^s].
double beta_mellin(double a, double b, double s);

//! E(|X|^t e^{i s arg X}) for X = 1 + e^{i theta} sqrt(B_{1,lambda}).
double mf_one_plus_sphere_coord(double lambda, double t, double s);

//! E(|X|^t e^{i s arg X}) for X = 2 cos(phi) e^{i phi}, phi a cos-power angle
//! with complex parameter z, Re z > -1/2. Real-valued for real queries.
double mf_cospower(Complex z, double t, double s);

//! Mellin–Fourier transform of 1 - Y for Y ~ TiltedLaw(lambda, delta):
//! the exact moment E(|1-Y|^t e^{i s arg(1-Y)}), real for real delta.
double tilted_mf(double lambda, Complex delta, double t, double s);

//! Closed form for the slipped-coordinate identity target: the Mellin–Fourier
//! transform of X = 1 - (Y - (1-|Y|^2) B_{1,lambda-1} / (1-conj(Y))).
double mf_theorem_a1_target(double lambda, Complex delta, double t, double s);

// -- densities (unnormalized unless stated) --

//! (1/n!) prod_{k<l} |e^{i a_k} - e^{i a_l}|^2; the caller's quadrature
//! supplies the (2 pi)^{-n} factor.
double weyl_density_unitary(std::span<const double> angles);

//! prod_{k<l} |e^{i a_k} - e^{i a_l}|^2 prod_j |1 - e^{i a_j}|^{2p}.
double conditional_density_unitary(std::span<const double> angles, int p);

//! |Vandermonde(xs)|^beta prod (2-x)^a (2+x)^b on (-2, 2)^n.
double jacobi_density(std::span<const double> xs, double beta, double a, double b);

//! prod_{k<l} (cos a_k - cos a_l)^2, times prod (1 - cos)(1 + cos) for USp.
double so_usp_density(std::span<const double> angles, CompactGroup group);

// -- exact moment oracles --

//! E|Z^{(p)} / p!|^2 under the conditional measure: the product of tilted
//! second moments over the n-p independent factors.
double expected_sq_modulus_zp(int n, int p);

//! Mean and second moment of a variate with density f_{s,t}.
double fst_mean(double s, double t);
double fst_second_moment(double s, double t);

//! E[log(2 B_{s,t})] and Var[log(2 B_{s,t})] (digamma / trigamma forms).
double log_two_beta_mean(double s, double t);
double log_two_beta_var(double s, double t);

}  // namespace condhaar
