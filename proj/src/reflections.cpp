#include "condhaar/reflections.hpp"

#include <cmath>
#include <stdexcept>

namespace condhaar {

Reflection reflection_from_column(int n, int k, Eigen::VectorXcd column) {
  if (k < 1 || k > n) throw std::invalid_argument("reflection_from_column: pivot out of range");
  if (column.size() != n - k + 1)
    throw std::invalid_argument("reflection_from_column: column length must be n - k + 1");
  if (std::abs(column.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("reflection_from_column: column must have unit norm");
  if (std::abs(1.0 - column(0)) <= kDegenerateTol)
    throw std::domain_error("reflection_from_column: degenerate (near-identity) column");
  return Reflection{n, k, std::move(column)};
}

Complex nontrivial_eigenvalue(const Reflection& r) {
  const Complex rkk = r.pivot_entry();
  const Complex den = 1.0 - std::conj(rkk);
  if (std::abs(den) <= kDegenerateTol)
    throw std::domain_error("nontrivial_eigenvalue: degenerate reflection");
  return -(1.0 - rkk) / den;
}

Reflection sample_nu(int n, int k, RngStream& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_nu: pivot out of range");
  const int q = n - k + 1;
  for (;;) {
    auto c = sample_complex_sphere(q, rng);
    Eigen::VectorXcd col = Eigen::Map<Eigen::VectorXcd>(c.data(), q);
    if (std::abs(1.0 - col(0)) > kDegenerateTol) return Reflection{n, k, std::move(col)};
  }
}

Reflection sample_nu_delta(int n, int k, Complex delta, RngStream& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_nu_delta: pivot out of range");
  const TiltedLaw law(static_cast<double>(n - k), delta);
  const int q = n - k + 1;
  for (;;) {
    const Complex pivot = sample_tilted_coord(law, rng);
    if (std::abs(1.0 - pivot) <= kDegenerateTol) continue;
    Eigen::VectorXcd col(q);
    col(0) = pivot;
    if (q > 1) {
      const double radius = std::sqrt(std::max(0.0, 1.0 - std::norm(pivot)));
      auto rest = sample_complex_sphere(q - 1, rng);
      for (int i = 1; i < q; ++i) col(i) = radius * rest[i - 1];
    }
    return Reflection{n, k, std::move(col)};
  }
}

Reflection sample_nu_real(int n, int k, RngStream& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_nu_real: pivot out of range");
  const int q = n - k + 1;
  for (;;) {
    auto c = sample_real_sphere(q, rng);
    Eigen::VectorXcd col(q);
    for (int i = 0; i < q; ++i) col(i) = c[i];
    if (std::abs(1.0 - col(0)) > kDegenerateTol) return Reflection{n, k, std::move(col)};
  }
}

Eigen::MatrixXcd realize(const Reflection& r) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(r.n, r.n);
  apply_left(r, m);
  return m;
}

void apply_left(const Reflection& r, Eigen::MatrixXcd& a) {
  if (a.rows() != r.n) throw std::invalid_argument("apply_left: dimension mismatch");
  const int off = r.k - 1;
  const int q = r.n - r.k + 1;
  const Complex inv = 1.0 / (1.0 - std::conj(r.column(0)));
  // (m w)_i = w_i + (m1_i - δ_{i1}) (w_1 - τ), τ = (⟨m1, w⟩ - conj(m11) w_1) / (1 - conj(m11)),
  // applied to each column of the trailing block.
  auto block = a.block(off, 0, q, a.cols());
  const Eigen::RowVectorXcd s = r.column.adjoint() * block;
  const Eigen::RowVectorXcd tau = (s - std::conj(r.column(0)) * block.row(0)) * inv;
  Eigen::VectorXcd dir = r.column;
  dir(0) -= 1.0;
  block.noalias() += dir * (block.row(0) - tau);
}

void apply_to_vector(const Reflection& r, Eigen::VectorXcd& v) {
  if (v.size() != r.n) throw std::invalid_argument("apply_to_vector: dimension mismatch");
  const int off = r.k - 1;
  const int q = r.n - r.k + 1;
  auto w = v.segment(off, q);
  const Complex inv = 1.0 / (1.0 - std::conj(r.column(0)));
  const Complex s = r.column.dot(w);  // ⟨m1, w⟩ = Σ conj(m1_i) w_i
  const Complex tau = (s - std::conj(r.column(0)) * w(0)) * inv;
  const Complex scale = w(0) - tau;
  w += r.column * scale;
  w(0) -= scale;
}

double tilt_weight(const Reflection& r, Complex delta) {
  const Complex one_minus = 1.0 - r.pivot_entry();
  if (std::abs(one_minus) <= kDegenerateTol)
    throw std::domain_error("tilt_weight: degenerate reflection");
  return std::exp(2.0 * delta.real() * std::log(std::abs(one_minus)) +
                  2.0 * delta.imag() * std::arg(one_minus));
}

}  // namespace condhaar
