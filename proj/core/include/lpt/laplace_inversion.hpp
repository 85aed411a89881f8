#pragma once

#include <functional>
#include <vector>

namespace lpt {

/// Real-axis numerical Laplace inversion. Gaver-Stehfest is the default;
/// Wynn-rho acceleration of the Gaver functionals is available for stiff
/// transforms. Both only ever evaluate F on the positive real axis.
struct InversionConfig {
    enum class Method { GaverStehfest, GaverWynnRho };
    Method method = Method::GaverStehfest;
    int terms = 16;               // even, in [4, 20] (double-precision bound)
    std::vector<double> t_grid;   // optional output grid for curve producers

    void validate() const;  // throws DomainError on violation
};

/// Stehfest weights zeta_1..zeta_n for an even term count n.
std::vector<double> stehfest_weights(int terms);

/// Estimate f(t) from F(q) = int_0^inf e^{-qt} f(t) dt.
/// Deterministic for a fixed config; throws InversionError (carrying the
/// offending abscissa) when F evaluates to a non-finite value.
double invert(const std::function<double(double)>& F, double t,
              const InversionConfig& cfg = {});

} // namespace lpt
