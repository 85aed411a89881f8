#include "lpt/diffusion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lpt/quadrature.hpp"

namespace lpt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nu_of(const GeometricBM& g) { return g.mu / (g.sigma * g.sigma) - 0.5; }

double nu_above(const SwitchingGBM& g) {
    return g.mu_above / (g.sigma_above * g.sigma_above) - 0.5;
}
double nu_below(const SwitchingGBM& g) {
    return g.mu_below / (g.sigma_below * g.sigma_below) - 0.5;
}

// s on one exponential branch with base point alpha: integral of
// exp(-2 mu (x-alpha)) from alpha to x.
double branch_scale_exp(double mu, double dx) {
    if (mu == 0.0) return dx;
    return -std::expm1(-2.0 * mu * dx) / (2.0 * mu);
}

// s on one power-law branch with base point alpha: integral of
// (x/alpha)^(-2 nu - 1) from alpha to x.
double branch_scale_pow(double nu, double alpha, double x) {
    if (nu == 0.0) return alpha * std::log(x / alpha);
    return alpha * (std::pow(x / alpha, -2.0 * nu) - 1.0) / (-2.0 * nu);
}

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

} // namespace

const char* to_string(BoundaryCase c) {
    switch (c) {
        case BoundaryCase::Case1: return "Case1";
        case BoundaryCase::Case2: return "Case2";
        case BoundaryCase::Case3: return "Case3";
    }
    return "?";
}

DiffusionSpec::DiffusionSpec(Family family, Interval interval, double alpha)
    : family_(std::move(family)), interval_(interval), alpha_(alpha) {
    require(interval_.lower < interval_.upper, "DiffusionSpec: empty interval");
    require(interval_.lower < alpha_ && alpha_ < interval_.upper,
            "DiffusionSpec: alpha outside the state interval");

    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift> ||
                          std::is_same_v<T, OrnsteinUhlenbeck> ||
                          std::is_same_v<T, SwitchingBrownian>) {
                require(interval_.lower == -kInf && interval_.upper == kInf,
                        "DiffusionSpec: this family lives on the whole line");
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                require(interval_.lower == 0.0 && interval_.upper == kInf,
                        "DiffusionSpec: GeometricBM lives on (0, inf)");
                require(fam.sigma > 0.0, "DiffusionSpec: sigma must be positive");
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                require(interval_.lower == 0.0 && interval_.upper == kInf,
                        "DiffusionSpec: SwitchingGBM lives on (0, inf)");
                require(fam.sigma_above > 0.0 && fam.sigma_below > 0.0,
                        "DiffusionSpec: sigma must be positive");
            } else if constexpr (std::is_same_v<T, GenericDiffusion>) {
                require(static_cast<bool>(fam.mu) && static_cast<bool>(fam.sigma),
                        "DiffusionSpec: generic coefficients not set");
            }
        },
        family_);

    // Probe the coefficients near alpha; full regularity is assumed, not checked.
    const double lo = std::isfinite(interval_.lower)
                          ? 0.5 * (interval_.lower + alpha_)
                          : alpha_ - 1.0;
    const double hi = std::isfinite(interval_.upper)
                          ? 0.5 * (alpha_ + interval_.upper)
                          : alpha_ + 1.0;
    for (double x : {lo, alpha_, hi}) {
        const double mu = drift(x);
        const double sg = volatility(x);
        if (!std::isfinite(mu) || !std::isfinite(sg))
            throw CoefficientError("DiffusionSpec: non-finite coefficient at sampled point");
        if (sg <= 0.0)
            throw CoefficientError("DiffusionSpec: sigma(x) <= 0 at sampled point");
    }
}

double DiffusionSpec::drift(double x) const {
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                return -fam.nu;
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return -fam.kappa * x;
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                return fam.mu * x;
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                return x >= alpha_ ? fam.mu_above : fam.mu_below;
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                return (x >= alpha_ ? fam.mu_above : fam.mu_below) * x;
            } else {
                return fam.mu(x);
            }
        },
        family_);
}

double DiffusionSpec::volatility(double x) const {
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift> ||
                          std::is_same_v<T, OrnsteinUhlenbeck> ||
                          std::is_same_v<T, SwitchingBrownian>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                return fam.sigma * x;
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                return (x >= alpha_ ? fam.sigma_above : fam.sigma_below) * x;
            } else {
                return fam.sigma(x);
            }
        },
        family_);
}

bool DiffusionSpec::is_switching() const {
    return std::holds_alternative<SwitchingBrownian>(family_) ||
           std::holds_alternative<SwitchingGBM>(family_);
}

std::string DiffusionSpec::family_name() const {
    return std::visit(
        [](const auto& fam) -> std::string {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) return "brownian_drift";
            else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) return "ornstein_uhlenbeck";
            else if constexpr (std::is_same_v<T, GeometricBM>) return "geometric_bm";
            else if constexpr (std::is_same_v<T, SwitchingBrownian>) return "switching_brownian";
            else if constexpr (std::is_same_v<T, SwitchingGBM>) return "switching_gbm";
            else return "generic";
        },
        family_);
}

DiffusionSpec make_brownian_drift(double nu, double alpha) {
    return DiffusionSpec(BrownianDrift{nu}, Interval{-kInf, kInf}, alpha);
}
DiffusionSpec make_ornstein_uhlenbeck(double kappa, double alpha) {
    return DiffusionSpec(OrnsteinUhlenbeck{kappa}, Interval{-kInf, kInf}, alpha);
}
DiffusionSpec make_geometric_bm(double mu, double sigma, double alpha) {
    return DiffusionSpec(GeometricBM{mu, sigma}, Interval{0.0, kInf}, alpha);
}
DiffusionSpec make_switching_brownian(double mu_above, double mu_below, double alpha) {
    return DiffusionSpec(SwitchingBrownian{mu_above, mu_below}, Interval{-kInf, kInf},
                         alpha);
}
DiffusionSpec make_switching_gbm(double mu_above, double sigma_above, double mu_below,
                                 double sigma_below, double alpha) {
    return DiffusionSpec(SwitchingGBM{mu_above, sigma_above, mu_below, sigma_below},
                         Interval{0.0, kInf}, alpha);
}

// ---------------------------------------------------------------------------
// Scale / speed
// ---------------------------------------------------------------------------

namespace {

// int_alpha^x 2 mu / sigma^2 for the generic family.
double generic_log_slope(const DiffusionSpec& spec, double x) {
    const double alpha = spec.alpha();
    if (x == alpha) return 0.0;
    auto integrand = [&](double u) {
        const double sg = spec.volatility(u);
        if (!std::isfinite(sg) || sg <= 0.0)
            throw CoefficientError("scale: sigma(x) non-finite or non-positive");
        return 2.0 * spec.drift(u) / (sg * sg);
    };
    return integrate(integrand, alpha, x, 1e-12, 1e-14);
}

double generic_scale(const DiffusionSpec& spec, double x) {
    const double alpha = spec.alpha();
    if (x == alpha) return 0.0;
    auto integrand = [&](double y) {
        return std::exp(-generic_log_slope(spec, y));
    };
    return integrate(integrand, alpha, x, 1e-10, 1e-14);
}

} // namespace

double scale(const DiffusionSpec& spec, double x) {
    if (!spec.contains(x)) throw DomainError("scale: x outside the state interval");
    const double alpha = spec.alpha();
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                // base point 0: s(x) = (e^{2 nu x} - 1) / (2 nu)
                return fam.nu == 0.0 ? x : std::expm1(2.0 * fam.nu * x) / (2.0 * fam.nu);
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                // base point 0: s(x) = int_0^x e^{kappa y^2} dy
                const double k = fam.kappa;
                if (k == 0.0) return x;
                if (k < 0.0) {
                    const double a = std::sqrt(-k);
                    return 0.5 * std::sqrt(M_PI) / a * std::erf(a * x);
                }
                return integrate([k](double y) { return std::exp(k * y * y); }, 0.0, x,
                                 1e-12);
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                // natural antiderivative: s(x) = -x^{-2 nu} / (2 nu)
                const double nu = nu_of(fam);
                if (nu == 0.0) return std::log(x);
                return -std::pow(x, -2.0 * nu) / (2.0 * nu);
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                return x >= alpha ? branch_scale_exp(fam.mu_above, x - alpha)
                                  : branch_scale_exp(fam.mu_below, x - alpha);
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                return x >= alpha ? branch_scale_pow(nu_above(fam), alpha, x)
                                  : branch_scale_pow(nu_below(fam), alpha, x);
            } else {
                return generic_scale(spec, x);
            }
        },
        spec.family());
}

double scale_slope(const DiffusionSpec& spec, double x) {
    if (!spec.contains(x)) throw DomainError("scale_slope: x outside the state interval");
    const double alpha = spec.alpha();
    return std::visit(
        [&](const auto& fam) -> double {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                return std::exp(2.0 * fam.nu * x);
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                return std::exp(fam.kappa * x * x);
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                return std::pow(x, -2.0 * nu_of(fam) - 1.0);
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                const double mu = x >= alpha ? fam.mu_above : fam.mu_below;
                return std::exp(-2.0 * mu * (x - alpha));
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                const double nu = x >= alpha ? nu_above(fam) : nu_below(fam);
                return std::pow(x / alpha, -2.0 * nu - 1.0);
            } else {
                const double v = std::exp(-generic_log_slope(spec, x));
                if (!std::isfinite(v))
                    throw CoefficientError("scale_slope: non-finite value");
                return v;
            }
        },
        spec.family());
}

double speed_density(const DiffusionSpec& spec, double x) {
    const double sg = spec.volatility(x);
    if (!std::isfinite(sg) || sg <= 0.0)
        throw CoefficientError("speed_density: sigma(x) non-finite or non-positive");
    return 2.0 / (sg * sg * scale_slope(spec, x));
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

// Numerical scale limit toward one endpoint for the generic family.
// Probes a geometric progression, accumulating increments; declares the
// limit infinite when the running value passes 1e12 without stabilizing.
double generic_scale_limit(const DiffusionSpec& spec, bool upper) {
    const Interval iv = spec.interval();
    const double alpha = spec.alpha();
    const double endpoint = upper ? iv.upper : iv.lower;
    const double sign = upper ? 1.0 : -1.0;

    double prev_x = alpha;
    double acc = 0.0;
    for (int k = 1; k <= 48; ++k) {
        double x;
        if (std::isfinite(endpoint)) {
            x = endpoint - (endpoint - alpha) * std::pow(2.0, -k);
        } else {
            x = alpha + sign * std::pow(2.0, k - 1);
        }
        const double step = integrate(
            [&](double y) { return std::exp(-generic_log_slope(spec, y)); }, prev_x, x,
            1e-10, 1e-14);
        acc += step;
        prev_x = x;
        if (std::abs(acc) > 1e12) return sign * kInf;
        if (k > 3 && std::abs(step) <= 1e-9 * (1.0 + std::abs(acc))) return acc;
    }
    // Did not stabilize within the probe budget; treat as divergent.
    return sign * kInf;
}

} // namespace

CaseClass classify(const DiffusionSpec& spec) {
    double s_lo = -kInf, s_hi = kInf;
    const double alpha = spec.alpha();
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                if (fam.nu > 0.0) s_lo = -1.0 / (2.0 * fam.nu);
                if (fam.nu < 0.0) s_hi = -1.0 / (2.0 * fam.nu);
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                if (fam.kappa < 0.0) {
                    const double lim = 0.5 * std::sqrt(M_PI / -fam.kappa);
                    s_lo = -lim;
                    s_hi = lim;
                }
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                const double nu = nu_of(fam);
                if (nu < 0.0) s_lo = 0.0;
                if (nu > 0.0) s_hi = 0.0;
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                if (fam.mu_below < 0.0) s_lo = 1.0 / (2.0 * fam.mu_below);
                if (fam.mu_above > 0.0) s_hi = 1.0 / (2.0 * fam.mu_above);
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                const double nb = nu_below(fam), na = nu_above(fam);
                if (nb < 0.0) s_lo = alpha / (2.0 * nb);
                if (na > 0.0) s_hi = alpha / (2.0 * na);
            } else {
                s_lo = generic_scale_limit(spec, false);
                s_hi = generic_scale_limit(spec, true);
            }
        },
        spec.family());

    const bool lo_fin = std::isfinite(s_lo);
    const bool hi_fin = std::isfinite(s_hi);
    if (!lo_fin && !hi_fin)
        throw NotTransientError("classify: both scale limits infinite (" +
                                spec.family_name() + ")");
    BoundaryCase tag = lo_fin && hi_fin ? BoundaryCase::Case3
                       : lo_fin         ? BoundaryCase::Case1
                                        : BoundaryCase::Case2;
    return CaseClass{tag, s_lo, s_hi};
}

double hitting_probability(const DiffusionSpec& spec, double x, double a, double b) {
    if (!(spec.interval().lower < a && a <= x && x <= b && b < spec.interval().upper) ||
        a >= b)
        throw DomainError("hitting_probability: need l < a <= x <= b < r");
    const double sa = scale(spec, a), sx = scale(spec, x), sb = scale(spec, b);
    return (sb - sx) / (sb - sa);
}

} // namespace lpt
