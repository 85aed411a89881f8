#include "lpt/switching.hpp"

#include <cmath>

#include "lpt/errors.hpp"

namespace lpt {
namespace {

void require_negative_drifts(double mu_above, double mu_below) {
    if (!(mu_above < 0.0) || !(mu_below < 0.0))
        throw DomainError("switching_bm: both drifts must be negative");
}

void require_q(double q) {
    if (!(q > 0.0)) throw DomainError("switching: q must be positive");
}

} // namespace

double switching_bm_laplace(double mu_above, double mu_below, double q) {
    require_negative_drifts(mu_above, mu_below);
    require_q(q);
    const double ra = std::sqrt(mu_above * mu_above + 2.0 * q);
    const double rb = std::sqrt(mu_below * mu_below + 2.0 * q);
    return -2.0 * mu_below / (mu_above - mu_below + ra + rb);
}

double switching_bm_green(double mu_above, double mu_below, double q) {
    require_negative_drifts(mu_above, mu_below);
    require_q(q);
    const double ra = std::sqrt(mu_above * mu_above + 2.0 * q);
    const double rb = std::sqrt(mu_below * mu_below + 2.0 * q);
    return 1.0 / (mu_above - mu_below + ra + rb);
}

double switching_gbm_laplace(double mu_above, double sigma_above, double mu_below,
                             double sigma_below, double alpha, double q) {
    if (!(sigma_above > 0.0) || !(sigma_below > 0.0))
        throw DomainError("switching_gbm: volatilities must be positive");
    if (!(alpha > 0.0)) throw DomainError("switching_gbm: alpha must be positive");
    require_q(q);
    const double nu_a = mu_above / (sigma_above * sigma_above) - 0.5;
    const double nu_b = mu_below / (sigma_below * sigma_below) - 0.5;
    if (!(nu_a < 0.0) || !(nu_b < 0.0))
        throw DomainError("switching_gbm: nu_i = mu_i/sigma_i^2 - 1/2 must be negative");
    const double ra = std::sqrt(nu_a * nu_a + 2.0 * q / (sigma_above * sigma_above));
    const double rb = std::sqrt(nu_b * nu_b + 2.0 * q / (sigma_below * sigma_below));
    return -2.0 * nu_b / (nu_a - nu_b + ra + rb);
}

} // namespace lpt
