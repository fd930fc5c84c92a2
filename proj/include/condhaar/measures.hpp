#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "condhaar/reflections.hpp"

namespace condhaar {

//! Deflation tolerance for eigenvalues pinned at 1 (shared with charpoly).
inline constexpr double kPinnedAngleTol = 1e-8;

//! Dense unitary matrix with an explicit tolerance contract:
//! max |u* u - Id| <= 1e-10 and ||det u| - 1| <= 1e-8.
struct UnitaryMatrix {
  Eigen::MatrixXcd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  //! Largest entry of |u* u - Id|.
  double unitarity_defect() const;
  //! Throws if either tolerance is violated.
  void validate() const;
};

//! Sorted eigenangles in (-pi, pi], ties at the cut mapped to +pi.
struct EigenangleSet {
  std::vector<double> angles;

  int size() const { return static_cast<int>(angles.size()); }
  //! Number of angles within the pinned tolerance of 0.
  int pinned_multiplicity(double tol = kPinnedAngleTol) const;
};

//! Haar-distributed unitary as the product r^(1) ... r^(n) of independent
//! reflection draws.
UnitaryMatrix sample_haar_unitary(int n, RngStream& rng);

//! Haar measure conditioned to have p eigenvalues equal to 1:
//! the product r^(1) ... r^(n-p). Requires 0 <= p <= n-1.
UnitaryMatrix sample_conditional_haar(int n, int p, RngStream& rng);

//! Slipped representation: product of tilted reflections r_p^(p+1) ... r_p^(n),
//! equal in spectral law to sample_conditional_haar(n, p).
UnitaryMatrix sample_conditional_slipped(int n, int p, RngStream& rng);

//! e^{i theta} r^(1) ... r^(n-1) with theta uniform and independent; the
//! spectrum is Haar-distributed.
UnitaryMatrix sample_rotated_conditional(int n, RngStream& rng);

//! The two sides of the generalized slipping identity for tilts delta_1..delta_m:
//! (r_{d1}^(1) ... r_{dm}^(m), r_{d1+1}^(2) ... r_{dm+1}^(m+1)), independently drawn.
std::pair<UnitaryMatrix, UnitaryMatrix> sample_generalized_slip(
    int n, const std::vector<Complex>& deltas, RngStream& rng);

struct ConditionedAbsZSample {
  UnitaryMatrix u;
  Eigen::VectorXcd pivots;  //!< the n accepted pivot entries r_kk
  long attempts = 0;        //!< rejection attempts consumed by this sample
};

//! Haar measure conditioned on |det(Id - u)| = x, built by rejection on the
//! first n-1 reflection factors and a final two-point pivot. Throws after
//! 1e6 failed attempts (acceptance vanishes as x approaches 2^n).
ConditionedAbsZSample sample_conditioned_on_abs_z(int n, double x, RngStream& rng);

//! Real orthogonal analogue of the conditional product, from real reflections.
Eigen::MatrixXd sample_conditional_orthogonal(int n, int p, RngStream& rng);

//! Eigenangles of a unitary matrix; validates the input contract first.
EigenangleSet eigenangles(const UnitaryMatrix& u);

//! CSV dump: header "n,<n>" then row-major interleaved real/imag entries.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix_csv(std::istream& is);

}  // namespace condhaar
