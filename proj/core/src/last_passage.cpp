#include "lpt/last_passage.hpp"

#include <algorithm>
#include <cmath>

namespace lpt {

LastPassageAnalyzer::LastPassageAnalyzer(std::shared_ptr<const GreenKit> kit,
                                         InversionConfig inversion)
    : kit_(std::move(kit)), inversion_(std::move(inversion)) {
    inversion_.validate();
}

double LastPassageAnalyzer::factor_above(double q) const {
    const double ga = kit_->green_above_at_alpha(q);
    const double gb = kit_->green_below_at_alpha(q);
    return ga / (ga + gb);
}

double LastPassageAnalyzer::factor_mass(double q) const {
    return kit_->green_below_at_alpha(q) / kit_->green_zero_at_alpha();
}

double LastPassageAnalyzer::factor_above_via_killing(double q) const {
    const double gamma = killing_rate(q);
    const double ga = kit_->green_above_at_alpha(q);
    return gamma * ga / (1.0 + gamma * ga);
}

double LastPassageAnalyzer::killing_rate(double q) const {
    return 1.0 / kit_->green_below_at_alpha(q);
}

double LastPassageAnalyzer::laplace_at_alpha(double q) const {
    return factor_above(q) * factor_mass(q);
}

double LastPassageAnalyzer::escape_probability(double x) const {
    const double alpha = kit_->alpha();
    if (!kit_->spec().contains(x))
        throw DomainError("escape_probability: x outside the state interval");
    if (x == alpha) return 0.0;
    const CaseClass& cc = kit_->boundary_case();
    const double sx = scale(kit_->spec(), x);
    const double sa = scale(kit_->spec(), alpha);
    if (x > alpha) {
        if (!std::isfinite(cc.s_upper)) return 0.0;  // r not attracting
        return (sx - sa) / (cc.s_upper - sa);
    }
    if (!std::isfinite(cc.s_lower)) return 0.0;  // l not attracting
    return (sa - sx) / (sa - cc.s_lower);
}

double LastPassageAnalyzer::laplace_from(double q, double x) const {
    const double alpha = kit_->alpha();
    if (x == alpha) return laplace_at_alpha(q);
    const double ga = kit_->green_above_at_alpha(q);
    const double gb = kit_->green_below_at_alpha(q);
    const double g0 = kit_->green_zero_at_alpha();
    double cont;
    if (x > alpha) {
        cont = kit_->green_above(q, x, alpha) / (ga + gb) * gb / g0;
    } else {
        cont = kit_->green_below(q, x, alpha) / (ga + gb) * ga / g0;
    }
    return escape_probability(x) + cont;
}

double LastPassageAnalyzer::density_raw(double t, double x) const {
    const double atom = escape_probability(x);
    auto F = [&](double q) { return laplace_from(q, x) - atom; };
    return invert(F, t, inversion_);
}

double LastPassageAnalyzer::density(double t, double x) const {
    return std::max(0.0, density_raw(t, x));
}

double LastPassageAnalyzer::cdf(double t, double x) const {
    const double atom = escape_probability(x);
    auto F = [&](double q) { return (laplace_from(q, x) - atom) / q; };
    const double cont = invert(F, t, inversion_);
    return std::clamp(atom + cont, 0.0, 1.0);
}

double LastPassageAnalyzer::adaptive_horizon(double x) const {
    double T = 1.0;
    for (int i = 0; i < 60; ++i) {
        if (1.0 - cdf(T, x) < 1e-3 && 1.0 - cdf(2.0 * T, x) < 1e-3) return T;
        T *= 2.0;
    }
    return T;
}

} // namespace lpt
