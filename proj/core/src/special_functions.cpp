#include "lpt/special_functions.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include "lpt/errors.hpp"
#include "lpt/quadrature.hpp"

namespace lpt {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;

// Kummer M(a, b, z) by direct series. Used only where the downstream
// combination is cancellation-safe.
double kummer_m(double a, double b, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 600; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 3) return sum;
    }
    throw SolverError("kummer_m: series did not converge");
}

// D_{-a}(x) via the confluent-hypergeometric representation. For x <= 0
// both terms are nonnegative, so the sum is stable; for x > 0 the terms
// cancel by a factor ~ e^{x^2/2} and this path must not be used.
double series_D(double a, double x) {
    const double z = 0.5 * x * x;
    const double m1 = kummer_m(0.5 * a, 0.5, z);
    const double m2 = kummer_m(0.5 * (a + 1.0), 1.5, z);
    const double g1 = std::tgamma(0.5 * (1.0 + a));
    // 1/Gamma(a/2) -> 0 as a -> 0
    const double inv_g2 = a == 0.0 ? 0.0 : 1.0 / std::tgamma(0.5 * a);
    const double bracket = m1 / g1 - kSqrt2 * x * m2 * inv_g2;
    return std::pow(2.0, -0.5 * a) * kSqrtPi * std::exp(-z / 2.0) * bracket;
}

// log integral representation:
//   D_{-a}(x) = e^{-x^2/4} / Gamma(a) * int_0^inf t^{a-1} e^{-t^2/2 - x t} dt
// evaluated with peak scaling so that arbitrarily large a and |x| stay in
// range. Returns log D.
double integral_log_D(double a, double x) {
    auto f = [&](double t) { return (a - 1.0) * std::log(t) - 0.5 * t * t - x * t; };

    // interior maximum of f (exists when the root below is real positive)
    double t_peak = -1.0;
    const double disc = x * x + 4.0 * (a - 1.0);
    if (disc >= 0.0) {
        const double root = 0.5 * (-x + std::sqrt(disc));
        if (root > 0.0) t_peak = root;
    }

    double log_parts[2];
    int n_parts = 0;

    double lo = 0.0;
    if (a < 1.0) {
        // substitute t = u^{1/a} on [0,1] to remove the endpoint singularity:
        // int_0^1 t^{a-1} g(t) dt = (1/a) int_0^1 g(u^{1/a}) du
        const double scale = std::max(0.0, -x - 0.5);  // max of -t^2/2 - x t on [0,1]
        auto g = [&](double u) {
            const double t = std::pow(u, 1.0 / a);
            return std::exp(-0.5 * t * t - x * t - scale);
        };
        const double s1 = integrate(g, 0.0, 1.0, 1e-13, 1e-300);
        log_parts[n_parts++] = -std::log(a) + scale + std::log(s1);
        lo = 1.0;
    }

    // remaining smooth part [lo, hi)
    double ref = std::max(t_peak, lo + 1.0);
    double fmax = std::max(f(ref), f(lo + 1e-3 * (ref - lo) + 1e-12));
    if (t_peak > lo) fmax = std::max(fmax, f(t_peak));
    double hi = std::max(ref * 2.0, lo + 5.0);
    while (f(hi) > fmax - 45.0 && hi < 1e8) hi *= 1.5;

    auto g2 = [&](double t) { return t <= 0.0 ? 0.0 : std::exp(f(t) - fmax); };
    const double s2 = integrate(g2, lo, hi, 1e-13, 1e-300);
    if (s2 > 0.0) log_parts[n_parts++] = fmax + std::log(s2);

    double log_i;
    if (n_parts == 2) {
        const double m = std::max(log_parts[0], log_parts[1]);
        log_i = m + std::log(std::exp(log_parts[0] - m) + std::exp(log_parts[1] - m));
    } else {
        log_i = log_parts[0];
    }
    return -0.25 * x * x - std::lgamma(a) + log_i;
}

} // namespace

double log_parabolic_cylinder_D(double order, double x) {
    if (order > 0.0)
        throw DomainError("parabolic_cylinder_D: order must be <= 0");
    const double a = -order;
    if (a == 0.0) return -0.25 * x * x;
    if (x <= 0.0 && x >= -8.0 && a <= 30.0) return std::log(series_D(a, x));
    return integral_log_D(a, x);
}

double parabolic_cylinder_D(double order, double x) {
    if (order > 0.0)
        throw DomainError("parabolic_cylinder_D: order must be <= 0");
    const double a = -order;
    if (a == 0.0) return std::exp(-0.25 * x * x);
    if (x <= 0.0 && x >= -8.0 && a <= 30.0) return series_D(a, x);
    const double ln = integral_log_D(a, x);
    if (ln > 709.0)
        throw RangeError("parabolic_cylinder_D: value overflows double range");
    return std::exp(ln);
}

} // namespace lpt
