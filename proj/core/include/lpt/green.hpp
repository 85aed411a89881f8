#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "lpt/diffusion.hpp"
#include "lpt/eigensystem.hpp"
#include "lpt/ext_real.hpp"

namespace lpt {

/// Fundamental pair of the reflected processes at fixed q:
/// psiA = a1 psi + a2 phi satisfies (psiA)^+(alpha) = 0 (reflection above),
/// phiB = b1 psi + b2 phi satisfies (phiB)^-(alpha) = 0 (reflection below).
struct ReflectedSystem {
    double q = 0;
    double a1 = 0, a2 = 0;
    double b1 = 0, b2 = 0;
    double w_above = 0;  // Wronskian of the above-reflected process, -phi^+(alpha)
    double w_below = 0;  // Wronskian of the below-reflected process,  psi^-(alpha)
    std::function<double(double)> psi_above;  // increasing on [alpha, r)
    std::function<double(double)> phi_above;  // = phi
    std::function<double(double)> psi_below;  // = psi
    std::function<double(double)> phi_below;  // decreasing on (l, alpha]
};

/// Green functions of the original diffusion and of the two processes
/// reflected at alpha, for q > 0 and q = 0, across all boundary cases.
/// Immutable after construction; evaluation is thread-safe (the per-q
/// eigen systems are memoized behind a mutex).
class GreenKit {
public:
    explicit GreenKit(DiffusionSpec spec);

    const DiffusionSpec& spec() const { return spec_; }
    const CaseClass& boundary_case() const { return case_; }
    double alpha() const { return spec_.alpha(); }
    const ZeroEigenSystem& zero_system() const { return zero_; }

    /// Memoized eigen system at q.
    std::shared_ptr<const EigenSystem> system(double q) const;

    ReflectedSystem reflected(double q) const;

    /// G_q(x,y) = psi(x^y) phi(xvy) / w
    double green(double q, double x, double y) const;

    /// G_0(x,y), case-dependent scale-difference formula.
    double green_zero(double x, double y) const;

    /// Reflected Green functions; arguments restricted to the half-interval.
    double green_above(double q, double x, double y) const;
    double green_below(double q, double x, double y) const;

    /// Dedicated coincident-argument forms, free of cancellation.
    double green_above_at_alpha(double q) const;  // phi(alpha)/(-phi^+(alpha))
    double green_below_at_alpha(double q) const;  //  psi(alpha)/psi^-(alpha)

    /// q = 0 reflected Green values; +infinity in Cases 1 / 2.
    ExtReal green_above_zero(double x, double y) const;
    ExtReal green_below_zero(double x, double y) const;

    double green_zero_at_alpha() const;

private:
    DiffusionSpec spec_;
    CaseClass case_;
    ZeroEigenSystem zero_;
    double s_alpha_;

    mutable std::mutex cache_mutex_;
    mutable std::map<double, std::shared_ptr<const EigenSystem>> cache_;
};

} // namespace lpt
