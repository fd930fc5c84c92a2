#include "condhaar/quadrature.hpp"

#include <numbers>
#include <vector>

namespace condhaar {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

// One tanh-sinh pass at step h over t in [-tmax, tmax], mapped to (a, b).
double pass(const std::function<double(double)>& f, double a, double b, double h, int nmax) {
  const double c = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = -nmax; i <= nmax; ++i) {
    const double t = i * h;
    const double u = kHalfPi * std::sinh(t);
    const double x = std::tanh(u);
    const double w = kHalfPi * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    const double xi = mid + c * x;
    if (xi <= a || xi >= b) continue;  // abscissa collapsed to an endpoint
    const double v = f(xi);
    if (std::isfinite(v)) sum += v * w;
  }
  return sum * c * h;
}
}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol) {
  double h = 0.5;
  int nmax = 12;
  double prev = pass(f, a, b, h, nmax);
  for (int level = 1; level <= 10; ++level) {
    h *= 0.5;
    nmax *= 2;
    const double cur = pass(f, a, b, h, nmax);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)) && level >= 3) return cur;
    prev = cur;
  }
  return prev;
}

double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double tol) {
  return integrate_1d(
      [&](double x) {
        return integrate_1d([&](double y) { return f(x, y); }, ay, by, tol * 0.1);
      },
      ax, bx, tol);
}

}  // namespace condhaar
