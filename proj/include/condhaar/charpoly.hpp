#pragma once

#include <span>
#include <utility>
#include <vector>

#include "condhaar/analytics.hpp"
#include "condhaar/measures.hpp"

namespace condhaar {

//! Shape pairs (s(k), t(k)) for k = 0..2n-2 driving the independent
//! alpha-coefficient draws of the Jacobi determinant identity.
struct AlphaSchedule {
  std::vector<std::pair<double, double>> pairs;

  int count() const { return static_cast<int>(pairs.size()); }
};

//! Joint draw of the normalized derivative statistics: z_plus ~ prod(2 - x_k),
//! z_minus ~ prod(2 + x_k). Both positive on the Jacobi route.
struct DerivativePair {
  double z_plus = 0.0;
  double z_minus = 0.0;
};

//! prod_k (1 - r_kk^(k)) over reflections with pivots 1..m in order; equals
//! det(Id - r^(1)...r^(m)) when m = n.
Complex det_id_minus_product(std::span<const Reflection> reflections);

//! p! times the product of (1 - e^{i theta}) over the non-deflated angles.
//! Requires at least p angles within 1e-8 of 0 (the deflation rule).
Complex z_derivative(const EigenangleSet& angles, int p);

//! log p! + sum of principal-branch log(1 - e^{i theta}) over non-deflated
//! angles; exp(log_z) reproduces z_derivative.
Complex log_z(const EigenangleSet& angles, int p);

//! Product-of-independent-variables route for the conditional derivative:
//! p! prod_{l=1}^{n-p} (1 - X_l) with X_l ~ TiltedLaw(l-1, p).
Complex sample_z_product_unitary(int n, int p, RngStream& rng);

//! Same draw accumulated as log p! + sum log(1 - X_l); exact for tail and
//! large-n limit statistics where the plain product would underflow.
Complex sample_log_z_product_unitary(int n, int p, RngStream& rng);

//! General (beta, a, b) schedule.
AlphaSchedule alpha_schedule_general(double beta, double a, double b, int n);

//! SO / USp schedules; equal to the general schedule at beta = 2 and
//! a = 2p+ -/+ 1/2, b = 2p- -/+ 1/2.
AlphaSchedule alpha_schedule_group(CompactGroup group, int n, int p_plus, int p_minus);

//! (2 prod(1 - a_k), 2 prod(1 + (-1)^k a_k)) with a_k ~ f_{s(k),t(k)}.
DerivativePair sample_jacobi_det_pair(const AlphaSchedule& schedule, RngStream& rng);

//! The same joint draw as (log det+, log det-).
std::pair<double, double> sample_jacobi_log_pair(const AlphaSchedule& schedule, RngStream& rng);

//! Jacobi ensemble at n = 1: x = 2 - 4 B_{a+1,b+1}, density ∝ (2-x)^a (2+x)^b.
double sample_jacobi_n1(double a, double b, RngStream& rng);

//! Group derivative pair (prod(2-x_k), prod(2+x_k)) via the group schedule.
//! The unnormalized derivatives are (2p+)! 2^{2p-} z_plus at +1 and
//! (2p-)! 2^{2p+} z_minus at -1.
DerivativePair so_usp_derivative_pair(CompactGroup group, int n, int p_plus, int p_minus,
                                      RngStream& rng);

}  // namespace condhaar
