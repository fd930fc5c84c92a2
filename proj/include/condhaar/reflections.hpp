#pragma once

#include <Eigen/Dense>
#include <complex>

#include "condhaar/distributions.hpp"
#include "condhaar/rng.hpp"

namespace condhaar {

//! Unitary map r with rank(r - Id) <= 1 fixing e_1 .. e_{k-1}, stored by the
//! generating column (the image of e_k restricted to coordinates k..n).
//! Not a Householder reflection: the nontrivial eigenvalue is generally
//! complex, not -1.
struct Reflection {
  int n = 0;                //!< ambient dimension
  int k = 1;                //!< pivot index, 1-based
  Eigen::VectorXcd column;  //!< unit-norm vector of length n - k + 1

  //! The pivot entry r_kk.
  Complex pivot_entry() const { return column(0); }
};

//! Tolerance below which |1 - r_kk| makes Eq-style division ill posed.
inline constexpr double kDegenerateTol = 1e-12;

//! Build a reflection from its generating column; throws on a near-identity
//! column (|1 - column[0]| <= 1e-12) or a non-unit-norm column.
Reflection reflection_from_column(int n, int k, Eigen::VectorXcd column);

//! The nontrivial eigenvalue -(1 - r_kk) / (1 - conj(r_kk)) on the unit circle.
Complex nontrivial_eigenvalue(const Reflection& r);

//! Column uniform on the complex sphere of dimension n - k + 1.
Reflection sample_nu(int n, int k, RngStream& rng);

//! Tilted reflection measure: the pivot entry follows TiltedLaw(n - k, delta);
//! conditionally on it, the remaining column entries stay uniform on the
//! sphere of radius sqrt(1 - |r_kk|^2).
Reflection sample_nu_delta(int n, int k, Complex delta, RngStream& rng);

//! Real analogue: column uniform on the real sphere; realization is orthogonal.
Reflection sample_nu_real(int n, int k, RngStream& rng);

//! Dense n x n realization Id_{k-1} ⊕ m with m built from the column.
Eigen::MatrixXcd realize(const Reflection& r);

//! In-place left multiplication a <- r * a touching only rows k..n. O(n^2).
void apply_left(const Reflection& r, Eigen::MatrixXcd& a);

//! In-place application v <- r * v touching only coordinates k..n. O(n).
void apply_to_vector(const Reflection& r, Eigen::VectorXcd& v);

//! The sampling weight (1 - r_kk)^{conj(delta)} (1 - conj(r_kk))^{delta},
//! real and positive for every nondegenerate reflection.
double tilt_weight(const Reflection& r, Complex delta);

}  // namespace condhaar
