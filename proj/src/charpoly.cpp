#include "condhaar/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace condhaar {

namespace {

//! Complex product that switches to log accumulation when a factor is tiny or
//! the running product leaves [1e-300, 1e300].
class ProductAccumulator {
 public:
  void multiply(Complex factor) {
    if (!log_mode_ && (std::abs(factor) < 1e-6 || std::abs(value_) < 1e-300 ||
                       std::abs(value_) > 1e300)) {
      switch_to_log();
    }
    if (log_mode_) {
      log_ += std::log(factor);
    } else {
      value_ *= factor;
    }
  }

  Complex value() const { return log_mode_ ? std::exp(log_) : value_; }
  Complex log_value() const { return log_mode_ ? log_ : std::log(value_); }

 private:
  void switch_to_log() {
    log_ = std::log(value_);
    log_mode_ = true;
  }
  Complex value_ = 1.0;
  Complex log_ = 0.0;
  bool log_mode_ = false;
};

double log_factorial(int p) {
  double acc = 0.0;
  for (int j = 2; j <= p; ++j) acc += std::log(static_cast<double>(j));
  return acc;
}

//! Indices of the angles kept after deflating the p closest to zero.
std::vector<int> deflated_indices(const EigenangleSet& angles, int p, const char* who) {
  const int n = angles.size();
  if (p < 0 || p > n) throw std::invalid_argument(std::string(who) + ": invalid p");
  if (angles.pinned_multiplicity() < p)
    throw std::runtime_error(std::string(who) + ": fewer than p angles pinned at 0");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(angles.angles[a]) < std::abs(angles.angles[b]);
  });
  std::vector<int> keep(order.begin() + p, order.end());
  return keep;
}

}  // namespace

Complex det_id_minus_product(std::span<const Reflection> reflections) {
  ProductAccumulator acc;
  int expected = 1;
  for (const Reflection& r : reflections) {
    if (r.k != expected++)
      throw std::invalid_argument("det_id_minus_product: pivots must be 1..m in order");
    acc.multiply(1.0 - r.pivot_entry());
  }
  return acc.value();
}

Complex z_derivative(const EigenangleSet& angles, int p) {
  ProductAccumulator acc;
  for (int i : deflated_indices(angles, p, "z_derivative"))
    acc.multiply(1.0 - std::polar(1.0, angles.angles[i]));
  return std::exp(log_factorial(p)) * acc.value();
}

Complex log_z(const EigenangleSet& angles, int p) {
  Complex acc = log_factorial(p);
  for (int i : deflated_indices(angles, p, "log_z")) {
    const Complex factor = 1.0 - std::polar(1.0, angles.angles[i]);
    if (factor == Complex(0.0))
      throw std::runtime_error("log_z: exactly singular nontrivial factor");
    acc += std::log(factor);
  }
  return acc;
}

Complex sample_z_product_unitary(int n, int p, RngStream& rng) {
  if (p < 0 || p > n - 1)
    throw std::invalid_argument("sample_z_product_unitary: requires 0 <= p <= n-1");
  ProductAccumulator acc;
  for (int l = 1; l <= n - p; ++l) {
    const TiltedLaw law(l - 1.0, static_cast<double>(p));
    acc.multiply(1.0 - sample_tilted_coord(law, rng));
  }
  return std::exp(log_factorial(p)) * acc.value();
}

Complex sample_log_z_product_unitary(int n, int p, RngStream& rng) {
  if (p < 0 || p > n - 1)
    throw std::invalid_argument("sample_log_z_product_unitary: requires 0 <= p <= n-1");
  Complex acc = log_factorial(p);
  for (int l = 1; l <= n - p; ++l) {
    const TiltedLaw law(l - 1.0, static_cast<double>(p));
    acc += std::log(1.0 - sample_tilted_coord(law, rng));
  }
  return acc;
}

AlphaSchedule alpha_schedule_general(double beta, double a, double b, int n) {
  if (!(beta > 0.0)) throw std::invalid_argument("alpha_schedule_general: beta must be > 0");
  if (!(a > -1.0) || !(b > -1.0))
    throw std::invalid_argument("alpha_schedule_general: a, b must be > -1");
  if (n < 1) throw std::invalid_argument("alpha_schedule_general: n must be >= 1");
  AlphaSchedule sched;
  sched.pairs.reserve(2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    double s, t;
    if (k % 2 == 0) {
      s = (2.0 * n - k - 2.0) * beta / 4.0 + a + 1.0;
      t = (2.0 * n - k - 2.0) * beta / 4.0 + b + 1.0;
    } else {
      s = (2.0 * n - k - 3.0) * beta / 4.0 + a + b + 2.0;
      t = (2.0 * n - k - 1.0) * beta / 4.0;
    }
    if (!(s > 0.0) || !(t > 0.0))
      throw std::invalid_argument("alpha_schedule_general: nonpositive shape in schedule");
    sched.pairs.emplace_back(s, t);
  }
  return sched;
}

AlphaSchedule alpha_schedule_group(CompactGroup group, int n, int p_plus, int p_minus) {
  if (n < 1) throw std::invalid_argument("alpha_schedule_group: n must be >= 1");
  if (p_plus < 0 || p_minus < 0)
    throw std::invalid_argument("alpha_schedule_group: pinned multiplicities must be >= 0");
  AlphaSchedule sched;
  sched.pairs.reserve(2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    double s, t;
    const double base = (2.0 * n - k - 1.0) / 2.0;
    if (group == CompactGroup::SO) {
      if (k % 2 == 0) {
        s = base + 2.0 * p_plus;
        t = base + 2.0 * p_minus;
      } else {
        s = base + 2.0 * p_plus + 2.0 * p_minus;
        t = base;
      }
    } else {
      if (k % 2 == 0) {
        s = (2.0 * n - k + 1.0) / 2.0 + 2.0 * p_plus;
        t = (2.0 * n - k + 1.0) / 2.0 + 2.0 * p_minus;
      } else {
        s = (2.0 * n - k + 3.0) / 2.0 + 2.0 * p_plus + 2.0 * p_minus;
        t = base;
      }
    }
    sched.pairs.emplace_back(s, t);
  }
  return sched;
}

DerivativePair sample_jacobi_det_pair(const AlphaSchedule& schedule, RngStream& rng) {
  double plus = 2.0, minus = 2.0;
  for (int k = 0; k < schedule.count(); ++k) {
    const auto [s, t] = schedule.pairs[k];
    const double alpha = sample_fst(s, t, rng);
    plus *= 1.0 - alpha;
    minus *= (k % 2 == 0) ? 1.0 + alpha : 1.0 - alpha;
  }
  return DerivativePair{plus, minus};
}

std::pair<double, double> sample_jacobi_log_pair(const AlphaSchedule& schedule, RngStream& rng) {
  double lp = std::log(2.0), lm = std::log(2.0);
  for (int k = 0; k < schedule.count(); ++k) {
    const auto [s, t] = schedule.pairs[k];
    const double alpha = sample_fst(s, t, rng);
    lp += std::log1p(-alpha);
    lm += (k % 2 == 0) ? std::log1p(alpha) : std::log1p(-alpha);
  }
  return {lp, lm};
}

double sample_jacobi_n1(double a, double b, RngStream& rng) {
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("sample_jacobi_n1: a, b must be > -1");
  return 2.0 - 4.0 * sample_beta(a + 1.0, b + 1.0, rng);
}

DerivativePair so_usp_derivative_pair(CompactGroup group, int n, int p_plus, int p_minus,
                                      RngStream& rng) {
  return sample_jacobi_det_pair(alpha_schedule_group(group, n, p_plus, p_minus), rng);
}

}  // namespace condhaar
