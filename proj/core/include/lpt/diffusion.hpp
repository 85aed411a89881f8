#pragma once

#include <functional>
#include <string>
#include <variant>

#include "lpt/errors.hpp"

namespace lpt {

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// dX = -nu dt + dW on the real line. nu > 0 drifts toward -infinity.
struct BrownianDrift {
    double nu;
};

/// dX = -kappa X dt + dW. Transient (both boundaries attracting) for kappa < 0.
struct OrnsteinUhlenbeck {
    double kappa;
};

/// dX = mu X dt + sigma X dW on (0, infinity).
struct GeometricBM {
    double mu;
    double sigma;
};

/// Unit-volatility Brownian motion whose drift switches at the reference
/// level: mu_below on (l, alpha), mu_above on [alpha, r).
struct SwitchingBrownian {
    double mu_above;
    double mu_below;
};

/// Geometric Brownian motion with regime switch at alpha; the level alpha
/// itself belongs to the above regime.
struct SwitchingGBM {
    double mu_above;
    double sigma_above;
    double mu_below;
    double sigma_below;
};

/// State-dependent coefficients; scale and speed are obtained by adaptive
/// quadrature and eigenfunctions by the shooting solver.
struct GenericDiffusion {
    std::function<double(double)> mu;
    std::function<double(double)> sigma;
};

using Family = std::variant<BrownianDrift, OrnsteinUhlenbeck, GeometricBM,
                            SwitchingBrownian, SwitchingGBM, GenericDiffusion>;

// ---------------------------------------------------------------------------
// Boundary classification
// ---------------------------------------------------------------------------

enum class BoundaryCase {
    Case1,  // s(l) finite, s(r) = +inf   (killed at l)
    Case2,  // s(l) = -inf, s(r) finite   (killed at r)
    Case3,  // both finite                (killed at either side)
};

struct CaseClass {
    BoundaryCase tag;
    double s_lower;  // s(l+), -inf when not attracting
    double s_upper;  // s(r-), +inf when not attracting
};

const char* to_string(BoundaryCase c);

// ---------------------------------------------------------------------------
// DiffusionSpec
// ---------------------------------------------------------------------------

struct Interval {
    double lower;
    double upper;
};

/// A one-dimensional diffusion on an open interval together with the
/// reference level alpha used by every downstream decomposition.
class DiffusionSpec {
public:
    DiffusionSpec(Family family, Interval interval, double alpha);

    const Family& family() const { return family_; }
    const Interval& interval() const { return interval_; }
    double alpha() const { return alpha_; }

    double drift(double x) const;
    double volatility(double x) const;

    bool contains(double x) const {
        return x > interval_.lower && x < interval_.upper;
    }

    bool is_generic() const {
        return std::holds_alternative<GenericDiffusion>(family_);
    }
    bool is_switching() const;

    std::string family_name() const;

private:
    Family family_;
    Interval interval_;
    double alpha_;
};

// Convenience constructors with each family's natural state space.
DiffusionSpec make_brownian_drift(double nu, double alpha = 0.0);
DiffusionSpec make_ornstein_uhlenbeck(double kappa, double alpha = 0.0);
DiffusionSpec make_geometric_bm(double mu, double sigma, double alpha = 1.0);
DiffusionSpec make_switching_brownian(double mu_above, double mu_below,
                                      double alpha = 0.0);
DiffusionSpec make_switching_gbm(double mu_above, double sigma_above,
                                 double mu_below, double sigma_below,
                                 double alpha);

// ---------------------------------------------------------------------------
// Scale and speed
// ---------------------------------------------------------------------------

/// Scale function s(x). Closed form for the catalog families; adaptive
/// Gauss-Kronrod for GenericDiffusion. The additive constant is fixed per
/// family (base point 0 on the line, the natural power-law antiderivative
/// for GBM, alpha for switching and generic families); downstream formulas
/// use only s-differences and limits.
double scale(const DiffusionSpec& spec, double x);

/// s'(x) = exp(-int 2 mu/sigma^2), strictly positive.
double scale_slope(const DiffusionSpec& spec, double x);

/// Speed-measure density m'(x) = 2 / (sigma^2(x) s'(x)).
double speed_density(const DiffusionSpec& spec, double x);

/// Boundary classification from the scale limits. Throws NotTransientError
/// when both limits are infinite.
CaseClass classify(const DiffusionSpec& spec);

/// P^x(H_a < H_b) = (s(b)-s(x)) / (s(b)-s(a)) for l < a <= x <= b < r.
double hitting_probability(const DiffusionSpec& spec, double x, double a,
                           double b);

} // namespace lpt
