#include "lpt/green.hpp"

#include <algorithm>
#include <cmath>

namespace lpt {

GreenKit::GreenKit(DiffusionSpec spec)
    : spec_(std::move(spec)), case_(classify(spec_)), zero_(solve_zero(spec_)),
      s_alpha_(scale(spec_, spec_.alpha())) {}

std::shared_ptr<const EigenSystem> GreenKit::system(double q) const {
    if (!(q > 0.0)) throw DomainError("GreenKit: q must be positive");
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    auto es = std::make_shared<EigenSystem>(solve(spec_, q));
    cache_.emplace(q, es);
    return es;
}

ReflectedSystem GreenKit::reflected(double q) const {
    auto es = system(q);
    const double alpha = spec_.alpha();
    const double w = es->wronskian;
    const double dpsi_a = es->dpsi_ds(alpha);
    const double dphi_a = es->dphi_ds(alpha);

    ReflectedSystem rs;
    rs.q = q;
    rs.a1 = -dphi_a / w;
    rs.a2 = dpsi_a / w;
    rs.b1 = -dphi_a / w;
    rs.b2 = dpsi_a / w;
    rs.w_above = -dphi_a;
    rs.w_below = dpsi_a;

    auto psi = es->psi;
    auto phi = es->phi;
    rs.psi_above = [a1 = rs.a1, a2 = rs.a2, psi, phi](double x) {
        return a1 * psi(x) + a2 * phi(x);
    };
    rs.phi_above = phi;
    rs.psi_below = psi;
    rs.phi_below = [b1 = rs.b1, b2 = rs.b2, psi, phi](double x) {
        return b1 * psi(x) + b2 * phi(x);
    };
    return rs;
}

double GreenKit::green(double q, double x, double y) const {
    if (!spec_.contains(x) || !spec_.contains(y))
        throw DomainError("green: arguments outside the state interval");
    auto es = system(q);
    return es->psi(std::min(x, y)) * es->phi(std::max(x, y)) / es->wronskian;
}

double GreenKit::green_zero(double x, double y) const {
    if (!spec_.contains(x) || !spec_.contains(y))
        throw DomainError("green_zero: arguments outside the state interval");
    const double slo = scale(spec_, std::min(x, y));
    const double shi = scale(spec_, std::max(x, y));
    switch (case_.tag) {
        case BoundaryCase::Case1:
            return slo - case_.s_lower;
        case BoundaryCase::Case2:
            return case_.s_upper - shi;
        case BoundaryCase::Case3:
            return (slo - case_.s_lower) * (case_.s_upper - shi) /
                   (case_.s_upper - case_.s_lower);
    }
    return 0;
}

double GreenKit::green_above(double q, double x, double y) const {
    const double alpha = spec_.alpha();
    if (x < alpha || y < alpha)
        throw DomainError("green_above: arguments must lie in [alpha, r)");
    if (x == alpha && y == alpha) return green_above_at_alpha(q);
    auto es = system(q);
    const double w = es->wronskian;
    const double a1 = -es->dphi_ds(alpha) / w;
    const double a2 = es->dpsi_ds(alpha) / w;
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double psi_a = a1 * es->psi(lo) + a2 * es->phi(lo);
    return psi_a * es->phi(hi) / (-es->dphi_ds(alpha));
}

double GreenKit::green_below(double q, double x, double y) const {
    const double alpha = spec_.alpha();
    if (x > alpha || y > alpha)
        throw DomainError("green_below: arguments must lie in (l, alpha]");
    if (x == alpha && y == alpha) return green_below_at_alpha(q);
    auto es = system(q);
    const double w = es->wronskian;
    const double b1 = -es->dphi_ds(alpha) / w;
    const double b2 = es->dpsi_ds(alpha) / w;
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double phi_b = b1 * es->psi(hi) + b2 * es->phi(hi);
    return es->psi(lo) * phi_b / es->dpsi_ds(alpha);
}

double GreenKit::green_above_at_alpha(double q) const {
    auto es = system(q);
    return es->phi(spec_.alpha()) / (-es->dphi_ds(spec_.alpha()));
}

double GreenKit::green_below_at_alpha(double q) const {
    auto es = system(q);
    return es->psi(spec_.alpha()) / es->dpsi_ds(spec_.alpha());
}

ExtReal GreenKit::green_above_zero(double x, double y) const {
    const double alpha = spec_.alpha();
    if (x < alpha || y < alpha)
        throw DomainError("green_above_zero: arguments must lie in [alpha, r)");
    if (case_.tag == BoundaryCase::Case1) return ExtReal::infinity();
    const double shi = scale(spec_, std::max(x, y));
    return ExtReal(case_.s_upper - shi);
}

ExtReal GreenKit::green_below_zero(double x, double y) const {
    const double alpha = spec_.alpha();
    if (x > alpha || y > alpha)
        throw DomainError("green_below_zero: arguments must lie in (l, alpha]");
    if (case_.tag == BoundaryCase::Case2) return ExtReal::infinity();
    const double slo = scale(spec_, std::min(x, y));
    return ExtReal(slo - case_.s_lower);
}

double GreenKit::green_zero_at_alpha() const {
    switch (case_.tag) {
        case BoundaryCase::Case1:
            return s_alpha_ - case_.s_lower;
        case BoundaryCase::Case2:
            return case_.s_upper - s_alpha_;
        case BoundaryCase::Case3:
            return (s_alpha_ - case_.s_lower) * (case_.s_upper - s_alpha_) /
                   (case_.s_upper - case_.s_lower);
    }
    return 0;
}

} // namespace lpt
