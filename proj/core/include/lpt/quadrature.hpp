#pragma once

#include <functional>

namespace lpt {

struct QuadratureResult {
    double value = 0;
    double error = 0;      // accumulated Kronrod error estimate
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite
/// interval [a, b]. Subdivides the worst interval until the combined
/// error estimate satisfies |err| <= max(abs_tol, rel_tol*|value|).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol = 1e-10,
                                    double abs_tol = 0.0,
                                    int max_subdivisions = 400);

/// Convenience wrapper returning just the value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0);

} // namespace lpt
