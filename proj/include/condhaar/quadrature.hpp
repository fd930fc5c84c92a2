#pragma once

#include <cmath>
#include <functional>

namespace condhaar {

//! Tanh-sinh quadrature of f over (a, b), tolerant of integrable endpoint
//! singularities. Absolute-error target; levels double until the estimate
//! stabilizes or the level cap is hit.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    double tol = 1e-10);

//! Nested tanh-sinh over (ax, bx) x (ay, by).
double integrate_2d(const std::function<double(double, double)>& f, double ax, double bx,
                    double ay, double by, double tol = 1e-8);

}  // namespace condhaar
