#include "condhaar/measures.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace condhaar {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTol = 1e-10;
constexpr double kDetTol = 1e-8;

double canonical_angle(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi) a = kPi;  // ties at the cut go to +pi
  return a;
}
}  // namespace

double UnitaryMatrix::unitarity_defect() const {
  const Eigen::MatrixXcd g = entries.adjoint() * entries - Eigen::MatrixXcd::Identity(dim(), dim());
  return g.cwiseAbs().maxCoeff();
}

void UnitaryMatrix::validate() const {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw std::invalid_argument("UnitaryMatrix: entries must be square and nonempty");
  if (unitarity_defect() > kUnitarityTol)
    throw std::runtime_error("UnitaryMatrix: unitarity tolerance violated");
  const double absdet = std::abs(entries.partialPivLu().determinant());
  if (std::abs(absdet - 1.0) > kDetTol)
    throw std::runtime_error("UnitaryMatrix: |det| tolerance violated");
}

int EigenangleSet::pinned_multiplicity(double tol) const {
  int count = 0;
  for (double a : angles)
    if (std::abs(a) <= tol) ++count;
  return count;
}

namespace {

UnitaryMatrix product_of(const std::vector<Reflection>& refl, int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n);
  for (auto it = refl.rbegin(); it != refl.rend(); ++it) apply_left(*it, a);
  return UnitaryMatrix{std::move(a)};
}

}  // namespace

UnitaryMatrix sample_haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary: n must be >= 1");
  std::vector<Reflection> refl;
  refl.reserve(n);
  for (int k = 1; k <= n; ++k) refl.push_back(sample_nu(n, k, rng));
  return product_of(refl, n);
}

UnitaryMatrix sample_conditional_haar(int n, int p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_conditional_haar: n must be >= 1");
  if (p < 0 || p > n - 1)
    throw std::invalid_argument("sample_conditional_haar: requires 0 <= p <= n-1");
  std::vector<Reflection> refl;
  refl.reserve(n - p);
  for (int k = 1; k <= n - p; ++k) refl.push_back(sample_nu(n, k, rng));
  return product_of(refl, n);
}

UnitaryMatrix sample_conditional_slipped(int n, int p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_conditional_slipped: n must be >= 1");
  if (p < 0 || p > n - 1)
    throw std::invalid_argument("sample_conditional_slipped: requires 0 <= p <= n-1");
  std::vector<Reflection> refl;
  refl.reserve(n - p);
  for (int k = p + 1; k <= n; ++k)
    refl.push_back(sample_nu_delta(n, k, static_cast<double>(p), rng));
  return product_of(refl, n);
}

UnitaryMatrix sample_rotated_conditional(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_rotated_conditional: n must be >= 1");
  const double theta = rng.uniform(-kPi, kPi);
  UnitaryMatrix u = sample_conditional_haar(n, n == 1 ? 0 : 1, rng);
  u.entries *= Complex(std::cos(theta), std::sin(theta));
  return u;
}

std::pair<UnitaryMatrix, UnitaryMatrix> sample_generalized_slip(
    int n, const std::vector<Complex>& deltas, RngStream& rng) {
  const int m = static_cast<int>(deltas.size());
  if (m < 1 || m > n - 1)
    throw std::invalid_argument("sample_generalized_slip: requires 1 <= m <= n-1");
  for (const Complex& d : deltas)
    if (!(d.real() > -0.5))
      throw std::invalid_argument("sample_generalized_slip: Re(delta) must be > -1/2");
  std::vector<Reflection> left, right;
  for (int k = 1; k <= m; ++k) left.push_back(sample_nu_delta(n, k, deltas[k - 1], rng));
  for (int k = 2; k <= m + 1; ++k)
    right.push_back(sample_nu_delta(n, k, deltas[k - 2] + 1.0, rng));
  return {product_of(left, n), product_of(right, n)};
}

ConditionedAbsZSample sample_conditioned_on_abs_z(int n, double x, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_conditioned_on_abs_z: n must be >= 1");
  if (!(x > 0.0) || !(x < std::pow(2.0, n)))
    throw std::invalid_argument("sample_conditioned_on_abs_z: requires 0 < x < 2^n");
  constexpr long kMaxAttempts = 1000000;
  for (long attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    std::vector<Reflection> refl;
    refl.reserve(n);
    double prod = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
      refl.push_back(sample_nu(n, k, rng));
      prod *= std::abs(1.0 - refl.back().pivot_entry());
    }
    if (!(prod > x / 2.0)) continue;
    const double phi = 2.0 * std::asin(x / (2.0 * prod));
    const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
    Eigen::VectorXcd last(1);
    last(0) = Complex(std::cos(sign * phi), std::sin(sign * phi));
    refl.push_back(reflection_from_column(n, n, std::move(last)));
    Eigen::VectorXcd pivots(n);
    for (int k = 0; k < n; ++k) pivots(k) = refl[k].pivot_entry();
    return ConditionedAbsZSample{product_of(refl, n), std::move(pivots), attempt};
  }
  throw std::runtime_error("sample_conditioned_on_abs_z: acceptance too low (1e6 attempts)");
}

Eigen::MatrixXd sample_conditional_orthogonal(int n, int p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_conditional_orthogonal: n must be >= 1");
  if (p < 0 || p > n - 1)
    throw std::invalid_argument("sample_conditional_orthogonal: requires 0 <= p <= n-1");
  std::vector<Reflection> refl;
  refl.reserve(n - p);
  for (int k = 1; k <= n - p; ++k) refl.push_back(sample_nu_real(n, k, rng));
  const UnitaryMatrix u = product_of(refl, n);
  return u.entries.real();
}

EigenangleSet eigenangles(const UnitaryMatrix& u) {
  u.validate();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u.entries, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("eigenangles: Schur decomposition failed");
  std::vector<double> angles(u.dim());
  for (int i = 0; i < u.dim(); ++i) angles[i] = canonical_angle(schur.matrixT()(i, i));
  std::sort(angles.begin(), angles.end());
  return EigenangleSet{std::move(angles)};
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  os << "n," << n << "\n";
  os.precision(17);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) os << ",";
      os << m(i, j).real() << "," << m(i, j).imag();
    }
    os << "\n";
  }
}

Eigen::MatrixXcd read_matrix_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("n,", 0) != 0)
    throw std::runtime_error("read_matrix_csv: missing header");
  const int n = std::stoi(line.substr(2));
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("read_matrix_csv: truncated");
    std::stringstream ss(line);
    std::string cell;
    for (int j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_matrix_csv: bad row");
      re = std::stod(cell);
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_matrix_csv: bad row");
      im = std::stod(cell);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace condhaar
