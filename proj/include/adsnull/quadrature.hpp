#ifndef ADSNULL_QUADRATURE_HPP
#define ADSNULL_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace adsnull {

// Adaptive Gauss-Kronrod (G7, K15) integrator on a finite interval.
// The K15 value is returned; |K15 - G7| drives bisection.
double integrate(const std::function<double(double)> &f, double a, double b,
                 double abs_tol = 1e-12, int max_depth = 30);

// Integral over [a, +infinity) via the substitution t = a + tan(u)^2,
// intended for integrands decaying at least as t^{-3/2}.
double integrate_to_infinity(const std::function<double(double)> &f, double a,
                             double abs_tol = 1e-12);

} // namespace adsnull

#endif
