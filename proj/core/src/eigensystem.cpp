#include "lpt/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <vector>

#include "lpt/special_functions.hpp"

namespace lpt {
namespace {

// ---------------------------------------------------------------------------
// Catalog closed forms
// ---------------------------------------------------------------------------

EigenSystem solve_brownian(const BrownianDrift& fam, double q) {
    const double nu = fam.nu;
    const double theta = std::sqrt(nu * nu + 2.0 * q);
    EigenSystem es;
    es.q = q;
    es.psi = [nu, theta](double x) { return std::exp((nu + theta) * x); };
    es.phi = [nu, theta](double x) { return std::exp((nu - theta) * x); };
    es.dpsi_ds = [nu, theta](double x) {
        return (nu + theta) * std::exp((theta - nu) * x);
    };
    es.dphi_ds = [nu, theta](double x) {
        return (nu - theta) * std::exp(-(theta + nu) * x);
    };
    es.wronskian = 2.0 * theta;
    return es;
}

// d/du log D_{-a}(u) = -u/2 - a * D_{-a-1}(u) / D_{-a}(u)
double log_D_slope(double a, double u) {
    const double ratio =
        std::exp(log_parabolic_cylinder_D(-a - 1.0, u) - log_parabolic_cylinder_D(-a, u));
    return -0.5 * u - a * ratio;
}

EigenSystem solve_ou(const OrnsteinUhlenbeck& fam, double alpha, double q) {
    if (fam.kappa >= 0.0)
        throw DomainError("solve: OU eigenfunction catalog requires kappa < 0");
    const double k = -fam.kappa;
    const double a = q / k + 1.0;
    const double sq2k = std::sqrt(2.0 * k);

    // psi(x) = C e^{-k x^2/2} D_{-a}(-x sqrt(2k)), normalized to 1 at alpha.
    const double c_psi =
        -0.5 * k * alpha * alpha + log_parabolic_cylinder_D(-a, -alpha * sq2k);
    const double c_phi =
        -0.5 * k * alpha * alpha + log_parabolic_cylinder_D(-a, alpha * sq2k);

    auto psi = [k, a, sq2k, c_psi](double x) {
        return std::exp(-0.5 * k * x * x + log_parabolic_cylinder_D(-a, -x * sq2k) -
                        c_psi);
    };
    auto phi = [k, a, sq2k, c_phi](double x) {
        return std::exp(-0.5 * k * x * x + log_parabolic_cylinder_D(-a, x * sq2k) -
                        c_phi);
    };
    // logarithmic x-derivatives
    auto dlog_psi = [k, a, sq2k](double x) {
        return -k * x - sq2k * log_D_slope(a, -x * sq2k);
    };
    auto dlog_phi = [k, a, sq2k](double x) {
        return -k * x + sq2k * log_D_slope(a, x * sq2k);
    };
    auto slope = [k](double x) { return std::exp(-k * x * x); };

    EigenSystem es;
    es.q = q;
    es.psi = psi;
    es.phi = phi;
    es.dpsi_ds = [psi, dlog_psi, slope](double x) {
        return psi(x) * dlog_psi(x) / slope(x);
    };
    es.dphi_ds = [phi, dlog_phi, slope](double x) {
        return phi(x) * dlog_phi(x) / slope(x);
    };
    es.wronskian = (dlog_psi(alpha) - dlog_phi(alpha)) / slope(alpha);
    return es;
}

EigenSystem solve_gbm(const GeometricBM& fam, double alpha, double q) {
    const double nu = fam.mu / (fam.sigma * fam.sigma) - 0.5;
    const double theta = std::sqrt(nu * nu + 2.0 * q / (fam.sigma * fam.sigma));
    const double ep = -nu + theta;  // increasing exponent
    const double em = -nu - theta;  // decreasing exponent
    EigenSystem es;
    es.q = q;
    es.psi = [ep, alpha](double x) { return std::pow(x / alpha, ep); };
    es.phi = [em, alpha](double x) { return std::pow(x / alpha, em); };
    // s'(x) = x^{-2 nu - 1}
    es.dpsi_ds = [ep, nu, alpha](double x) {
        return ep * std::pow(x / alpha, ep) * std::pow(x, 2.0 * nu);
    };
    es.dphi_ds = [em, nu, alpha](double x) {
        return em * std::pow(x / alpha, em) * std::pow(x, 2.0 * nu);
    };
    es.wronskian = 2.0 * theta * std::pow(alpha, 2.0 * nu);
    return es;
}

// C1 matching of per-regime exponentials at alpha. grow/decay are the
// characteristic roots of (1/2) k^2 + mu k = q per regime.
struct Roots {
    double grow, decay;
};
Roots bm_roots(double mu, double q) {
    const double th = std::sqrt(mu * mu + 2.0 * q);
    return {-mu + th, -mu - th};
}

EigenSystem solve_switching_bm(const SwitchingBrownian& fam, double alpha, double q) {
    const Roots A = bm_roots(fam.mu_above, q);
    const Roots B = bm_roots(fam.mu_below, q);

    // psi: pure growing mode below alpha, matched combination above
    const double beta1 = (B.grow - A.decay) / (A.grow - A.decay);
    const double beta2 = (A.grow - B.grow) / (A.grow - A.decay);
    // phi: pure decaying mode above alpha, matched combination below
    const double c1 = (A.decay - B.decay) / (B.grow - B.decay);
    const double c2 = (B.grow - A.decay) / (B.grow - B.decay);

    auto psi = [=](double x) {
        const double d = x - alpha;
        if (d < 0.0) return std::exp(B.grow * d);
        return beta1 * std::exp(A.grow * d) + beta2 * std::exp(A.decay * d);
    };
    auto dpsi_dx = [=](double x) {
        const double d = x - alpha;
        if (d < 0.0) return B.grow * std::exp(B.grow * d);
        return beta1 * A.grow * std::exp(A.grow * d) +
               beta2 * A.decay * std::exp(A.decay * d);
    };
    auto phi = [=](double x) {
        const double d = x - alpha;
        if (d >= 0.0) return std::exp(A.decay * d);
        return c1 * std::exp(B.grow * d) + c2 * std::exp(B.decay * d);
    };
    auto dphi_dx = [=](double x) {
        const double d = x - alpha;
        if (d >= 0.0) return A.decay * std::exp(A.decay * d);
        return c1 * B.grow * std::exp(B.grow * d) + c2 * B.decay * std::exp(B.decay * d);
    };
    auto slope = [=](double x) {
        const double mu = x >= alpha ? fam.mu_above : fam.mu_below;
        return std::exp(-2.0 * mu * (x - alpha));
    };

    EigenSystem es;
    es.q = q;
    es.psi = psi;
    es.phi = phi;
    es.dpsi_ds = [dpsi_dx, slope](double x) { return dpsi_dx(x) / slope(x); };
    es.dphi_ds = [dphi_dx, slope](double x) { return dphi_dx(x) / slope(x); };
    es.wronskian = B.grow - A.decay;  // s'(alpha) = 1
    return es;
}

Roots gbm_roots(double mu, double sigma, double q) {
    const double nu = mu / (sigma * sigma) - 0.5;
    const double th = std::sqrt(nu * nu + 2.0 * q / (sigma * sigma));
    return {-nu + th, -nu - th};
}

EigenSystem solve_switching_gbm(const SwitchingGBM& fam, double alpha, double q) {
    const Roots A = gbm_roots(fam.mu_above, fam.sigma_above, q);
    const Roots B = gbm_roots(fam.mu_below, fam.sigma_below, q);
    const double nu_a = fam.mu_above / (fam.sigma_above * fam.sigma_above) - 0.5;
    const double nu_b = fam.mu_below / (fam.sigma_below * fam.sigma_below) - 0.5;

    const double beta1 = (B.grow - A.decay) / (A.grow - A.decay);
    const double beta2 = (A.grow - B.grow) / (A.grow - A.decay);
    const double c1 = (A.decay - B.decay) / (B.grow - B.decay);
    const double c2 = (B.grow - A.decay) / (B.grow - B.decay);

    auto psi = [=](double x) {
        const double r = x / alpha;
        if (x < alpha) return std::pow(r, B.grow);
        return beta1 * std::pow(r, A.grow) + beta2 * std::pow(r, A.decay);
    };
    auto dpsi_dx = [=](double x) {
        const double r = x / alpha;
        if (x < alpha) return B.grow * std::pow(r, B.grow) / x;
        return (beta1 * A.grow * std::pow(r, A.grow) +
                beta2 * A.decay * std::pow(r, A.decay)) /
               x;
    };
    auto phi = [=](double x) {
        const double r = x / alpha;
        if (x >= alpha) return std::pow(r, A.decay);
        return c1 * std::pow(r, B.grow) + c2 * std::pow(r, B.decay);
    };
    auto dphi_dx = [=](double x) {
        const double r = x / alpha;
        if (x >= alpha) return A.decay * std::pow(r, A.decay) / x;
        return (c1 * B.grow * std::pow(r, B.grow) + c2 * B.decay * std::pow(r, B.decay)) /
               x;
    };
    auto slope = [=](double x) {
        const double nu = x >= alpha ? nu_a : nu_b;
        return std::pow(x / alpha, -2.0 * nu - 1.0);
    };

    EigenSystem es;
    es.q = q;
    es.psi = psi;
    es.phi = phi;
    es.dpsi_ds = [dpsi_dx, slope](double x) { return dpsi_dx(x) / slope(x); };
    es.dphi_ds = [dphi_dx, slope](double x) { return dphi_dx(x) / slope(x); };
    es.wronskian = (B.grow - A.decay) / alpha;  // s'(alpha) = 1
    return es;
}

// ---------------------------------------------------------------------------
// Generic solver: adaptive Cash-Karp RK45 with node storage,
// cubic-Hermite evaluation between accepted steps.
// ---------------------------------------------------------------------------

struct Mesh {
    std::vector<double> x, f, fp;

    double eval(double xx, bool deriv) const {
        if (x.empty()) throw SolverError("generic solver: empty mesh");
        if (xx < x.front() - 1e-12 || xx > x.back() + 1e-12)
            throw DomainError("generic eigenfunction evaluated outside solver mesh");
        auto it = std::upper_bound(x.begin(), x.end(), xx);
        size_t i = it == x.begin() ? 0 : static_cast<size_t>(it - x.begin()) - 1;
        if (i >= x.size() - 1) i = x.size() - 2;
        const double h = x[i + 1] - x[i];
        const double t = (xx - x[i]) / h;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
        const double h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t);
        const double h11 = t * t * (t - 1);
        if (!deriv)
            return h00 * f[i] + h10 * h * fp[i] + h01 * f[i + 1] + h11 * h * fp[i + 1];
        const double d00 = 6 * t * (t - 1) / h;
        const double d10 = (1 - t) * (1 - 3 * t);
        const double d01 = -6 * t * (t - 1) / h;
        const double d11 = t * (3 * t - 2);
        return d00 * f[i] + d10 * fp[i] + d01 * f[i + 1] + d11 * fp[i + 1];
    }

    void rescale(double c) {
        for (auto& v : f) v *= c;
        for (auto& v : fp) v *= c;
    }
};

// f'' = 2 (q f - mu f') / sigma^2
struct Rhs {
    const DiffusionSpec* spec;
    double q;
    void operator()(double x, const double y[2], double dy[2]) const {
        const double sg = spec->volatility(x);
        dy[0] = y[1];
        dy[1] = 2.0 * (q * y[0] - spec->drift(x) * y[1]) / (sg * sg);
    }
};

// Cash-Karp embedded RK4(5)
Mesh integrate_mode(const DiffusionSpec& spec, double q, double x_from, double x_to,
                    double f0, double fp0, double rel_tol) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 3.0 / 5, c5 = 1.0,
                        c6 = 7.0 / 8;
    static const double b21 = 1.0 / 5;
    static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27,
                        b54 = 35.0 / 27;
    static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                        b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
    static const double w1 = 37.0 / 378, w3 = 250.0 / 621, w4 = 125.0 / 594,
                        w6 = 512.0 / 1771;
    static const double e1 = w1 - 2825.0 / 27648, e3 = w3 - 18575.0 / 48384,
                        e4 = w4 - 13525.0 / 55296, e5 = -277.0 / 14336,
                        e6 = w6 - 1.0 / 4;

    Rhs rhs{&spec, q};
    const double dir = x_to > x_from ? 1.0 : -1.0;
    const double span = std::abs(x_to - x_from);
    double h = dir * std::min(0.01 * span, 0.1);
    double x = x_from;
    double y[2] = {f0, fp0};

    Mesh mesh;
    mesh.x.push_back(x);
    mesh.f.push_back(y[0]);
    mesh.fp.push_back(y[1]);

    long steps = 0;
    while (dir * (x_to - x) > 0.0) {
        if (++steps > 2000000)
            throw SolverError("generic solver: step limit exceeded at q=" +
                              std::to_string(q));
        if (dir * (x + h - x_to) > 0.0) h = x_to - x;

        double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], yt[2];
        rhs(x, y, k1);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * b21 * k1[i];
        rhs(x + c2 * h, yt, k2);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
        rhs(x + c3 * h, yt, k3);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
        rhs(x + c4 * h, yt, k4);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
        rhs(x + c5 * h, yt, k5);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] +
                                b65 * k5[i]);
        rhs(x + c6 * h, yt, k6);

        double ynew[2], err = 0.0;
        for (int i = 0; i < 2; ++i) {
            ynew[i] = y[i] + h * (w1 * k1[i] + w3 * k3[i] + w4 * k4[i] + w6 * k6[i]);
            const double ei =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]);
            const double sc = std::abs(y[i]) + std::abs(h * k1[i]) + 1e-300;
            err = std::max(err, std::abs(ei) / sc);
        }
        if (!std::isfinite(err))
            throw SolverError("generic solver: non-finite state at x=" +
                              std::to_string(x));

        if (err <= rel_tol) {
            x += h;
            y[0] = ynew[0];
            y[1] = ynew[1];
            if (std::abs(y[0]) > 1e150) {
                // normalization is fixed at alpha afterwards, so a global
                // rescale of everything stored so far is harmless
                mesh.rescale(1e-150);
                y[0] *= 1e-150;
                y[1] *= 1e-150;
            }
            mesh.x.push_back(x);
            mesh.f.push_back(y[0]);
            mesh.fp.push_back(y[1]);
        }
        const double fac =
            std::clamp(0.9 * std::pow(rel_tol / std::max(err, 1e-300), 0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(x)))
            throw SolverError("generic solver: step underflow at x=" +
                              std::to_string(x));
    }
    if (dir < 0) {
        std::reverse(mesh.x.begin(), mesh.x.end());
        std::reverse(mesh.f.begin(), mesh.f.end());
        std::reverse(mesh.fp.begin(), mesh.fp.end());
    }
    return mesh;
}

// characteristic roots of (1/2) sigma^2 k^2 + mu k = q at x
double local_root(const DiffusionSpec& spec, double q, double x, bool growing) {
    const double mu = spec.drift(x);
    const double s2 = spec.volatility(x) * spec.volatility(x);
    const double th = std::sqrt(mu * mu + 2.0 * q * s2);
    return growing ? (-mu + th) / s2 : (-mu - th) / s2;
}

// Expand from alpha toward one endpoint until the accumulated decay budget
// (e-folds of the relevant characteristic root) is reached.
double truncation_point(const DiffusionSpec& spec, double q, bool upper,
                        double budget) {
    const Interval iv = spec.interval();
    const double alpha = spec.alpha();
    const double endpoint = upper ? iv.upper : iv.lower;

    double x_prev = alpha;
    double acc = 0.0;
    for (int k = 1; k <= 60; ++k) {
        double x;
        if (std::isfinite(endpoint)) {
            x = endpoint + (alpha - endpoint) * std::pow(2.0, -k);
        } else {
            x = alpha + (upper ? 1.0 : -1.0) * std::pow(2.0, k - 1);
        }
        // trapezoid is plenty: the budget only needs the right magnitude
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            const double u0 = x_prev + (x - x_prev) * i / n;
            const double u1 = x_prev + (x - x_prev) * (i + 1) / n;
            const double r0 = std::abs(local_root(spec, q, u0, !upper));
            const double r1 = std::abs(local_root(spec, q, u1, !upper));
            acc += 0.5 * (r0 + r1) * std::abs(u1 - u0);
        }
        x_prev = x;
        if (acc >= budget) return x;
        if (std::isfinite(endpoint) && k >= 48) return x;
    }
    return x_prev;
}

void dump_meshes(const std::string& path, const Mesh& mp, const Mesh& mf) {
    std::ofstream os(path);
    os << "solution,x,f,fp\n";
    for (size_t i = 0; i < mp.x.size(); ++i)
        os << "psi," << mp.x[i] << ',' << mp.f[i] << ',' << mp.fp[i] << '\n';
    for (size_t i = 0; i < mf.x.size(); ++i)
        os << "phi," << mf.x[i] << ',' << mf.f[i] << ',' << mf.fp[i] << '\n';
}

EigenSystem solve_generic(const DiffusionSpec& spec, double q,
                          const ShootingOptions& opts) {
    const double alpha = spec.alpha();
    const double xl = truncation_point(spec, q, false, opts.decay_budget);
    const double xr = truncation_point(spec, q, true, opts.decay_budget);

    auto psi_mesh = std::make_shared<Mesh>(integrate_mode(
        spec, q, xl, xr, 1.0, local_root(spec, q, xl, true), opts.rel_tol));
    auto phi_mesh = std::make_shared<Mesh>(integrate_mode(
        spec, q, xr, xl, 1.0, local_root(spec, q, xr, false), opts.rel_tol));

    const double cp = psi_mesh->eval(alpha, false);
    const double cf = phi_mesh->eval(alpha, false);
    if (!(cp > 0.0) || !(cf > 0.0))
        throw SolverError("generic solver: solution not positive at alpha");
    psi_mesh->rescale(1.0 / cp);
    phi_mesh->rescale(1.0 / cf);

    if (!opts.mesh_dump_csv.empty()) dump_meshes(opts.mesh_dump_csv, *psi_mesh, *phi_mesh);

    // copy, not reference: the spec owns generic callables
    DiffusionSpec spec_copy = spec;
    EigenSystem es;
    es.q = q;
    es.psi = [psi_mesh](double x) { return psi_mesh->eval(x, false); };
    es.phi = [phi_mesh](double x) { return phi_mesh->eval(x, false); };
    es.dpsi_ds = [psi_mesh, spec_copy](double x) {
        return psi_mesh->eval(x, true) / scale_slope(spec_copy, x);
    };
    es.dphi_ds = [phi_mesh, spec_copy](double x) {
        return phi_mesh->eval(x, true) / scale_slope(spec_copy, x);
    };
    const double sa = scale_slope(spec, alpha);
    es.wronskian =
        (psi_mesh->eval(alpha, true) - phi_mesh->eval(alpha, true)) / sa;
    if (!(es.wronskian > 0.0))
        throw SolverError("generic solver: nonpositive Wronskian");
    return es;
}

} // namespace

EigenSystem solve(const DiffusionSpec& spec, double q) {
    return solve(spec, q, ShootingOptions{});
}

EigenSystem solve(const DiffusionSpec& spec, double q, const ShootingOptions& opts) {
    if (!(q > 0.0)) throw DomainError("solve: q must be positive");
    const double alpha = spec.alpha();
    return std::visit(
        [&](const auto& fam) -> EigenSystem {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>)
                return solve_brownian(fam, q);
            else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>)
                return solve_ou(fam, alpha, q);
            else if constexpr (std::is_same_v<T, GeometricBM>)
                return solve_gbm(fam, alpha, q);
            else if constexpr (std::is_same_v<T, SwitchingBrownian>)
                return solve_switching_bm(fam, alpha, q);
            else if constexpr (std::is_same_v<T, SwitchingGBM>)
                return solve_switching_gbm(fam, alpha, q);
            else
                return solve_generic(spec, q, opts);
        },
        spec.family());
}

ZeroEigenSystem solve_zero(const DiffusionSpec& spec) {
    const CaseClass cc = classify(spec);
    ZeroEigenSystem zs;
    zs.boundary_case = cc.tag;

    // Brownian-with-drift keeps the familiar exponential normalization.
    if (const auto* bm = std::get_if<BrownianDrift>(&spec.family())) {
        const double nu = bm->nu;
        if (cc.tag == BoundaryCase::Case1) {
            zs.psi0 = [nu](double x) { return std::exp(2.0 * nu * x); };
            zs.phi0 = [](double) { return 1.0; };
            zs.w0 = 2.0 * nu;
            return zs;
        }
        zs.psi0 = [](double) { return 1.0; };
        zs.phi0 = [nu](double x) { return std::exp(2.0 * nu * x); };
        zs.w0 = -2.0 * nu;
        return zs;
    }

    DiffusionSpec spec_copy = spec;
    switch (cc.tag) {
        case BoundaryCase::Case1:
            zs.psi0 = [spec_copy, sl = cc.s_lower](double x) {
                return scale(spec_copy, x) - sl;
            };
            zs.phi0 = [](double) { return 1.0; };
            zs.w0 = 1.0;
            break;
        case BoundaryCase::Case2:
            zs.psi0 = [](double) { return 1.0; };
            zs.phi0 = [spec_copy, sr = cc.s_upper](double x) {
                return sr - scale(spec_copy, x);
            };
            zs.w0 = 1.0;
            break;
        case BoundaryCase::Case3:
            zs.psi0 = [spec_copy, sl = cc.s_lower](double x) {
                return scale(spec_copy, x) - sl;
            };
            zs.phi0 = [spec_copy, sr = cc.s_upper](double x) {
                return sr - scale(spec_copy, x);
            };
            zs.w0 = cc.s_upper - cc.s_lower;
            break;
    }
    return zs;
}

} // namespace lpt
