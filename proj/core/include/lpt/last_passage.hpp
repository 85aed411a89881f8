#pragma once

#include <memory>

#include "lpt/green.hpp"
#include "lpt/laplace_inversion.hpp"

namespace lpt {

/// Laplace transform, killing rate, escape probability, density, and CDF of
/// the last passage time of the reference level alpha.
///
/// The law of lambda_alpha started from x splits into an atom at 0 of mass
/// P^x(H_alpha = inf) (the escape probability) and an absolutely continuous
/// part; density() is the continuous part only, cdf() includes the atom.
class LastPassageAnalyzer {
public:
    explicit LastPassageAnalyzer(std::shared_ptr<const GreenKit> kit,
                                 InversionConfig inversion = {});

    const GreenKit& kit() const { return *kit_; }
    double alpha() const { return kit_->alpha(); }

    /// E^alpha[e^{-q lambda}] through the two-factor decomposition.
    double laplace_at_alpha(double q) const;

    /// E^x[e^{-q lambda}]: escape term plus the reflected-Green term.
    double laplace_from(double q, double x) const;

    /// P^x(H_alpha = +infinity), a scale-ratio limit; 0 when the boundary on
    /// x's side is non-attracting, and 0 at x = alpha.
    double escape_probability(double x) const;

    /// gamma_q = 1 / G_q^B(alpha, alpha), the conditional rate at which the
    /// above-alpha process is killed at alpha.
    double killing_rate(double q) const;

    /// First decomposition factor G^A/(G^A + G^B) in (0,1).
    double factor_above(double q) const;
    /// Second factor G^B(alpha,alpha)/G_0(alpha,alpha) in (0,1).
    double factor_mass(double q) const;
    /// Same first factor through the killing-rate representation
    /// gamma G^A / (1 + gamma G^A).
    double factor_above_via_killing(double q) const;

    /// Continuous-part density at t (numerical inversion), clamped at 0.
    double density(double t, double x) const;
    /// Raw inverted value, possibly slightly negative from ringing.
    double density_raw(double t, double x) const;
    /// Atom at zero plus integrated continuous part, via inversion of F/q.
    double cdf(double t, double x) const;

    /// Smallest horizon T (by doubling) with 1 - cdf(T, x) < 1e-3 and a
    /// stable doubling check.
    double adaptive_horizon(double x) const;

private:
    std::shared_ptr<const GreenKit> kit_;
    InversionConfig inversion_;
};

} // namespace lpt
