#pragma once

#include <functional>
#include <string>

#include "lpt/diffusion.hpp"

namespace lpt {

/// The fundamental pair for G f = q f at a fixed transform rate q > 0:
/// psi increasing, phi decreasing, both positive, together with their
/// derivatives with respect to the scale function and the constant
/// Wronskian w = psi^+ phi - psi phi^+.
///
/// Normalization of psi and phi is arbitrary up to positive constants;
/// every quantity consumed downstream (Green values, decomposition
/// factors) is invariant under it.
struct EigenSystem {
    double q = 0;
    std::function<double(double)> psi;
    std::function<double(double)> phi;
    std::function<double(double)> dpsi_ds;
    std::function<double(double)> dphi_ds;
    double wronskian = 0;
};

/// Per-case fundamental pair for G f = 0 (Table-driven):
///   Case 1: phi0 == 1,     psi0 vanishing at l
///   Case 2: psi0 == 1,     phi0 vanishing at r
///   Case 3: psi0 = s-s(l), phi0 = s(r)-s, w0 = s(r)-s(l)
struct ZeroEigenSystem {
    BoundaryCase boundary_case = BoundaryCase::Case1;
    std::function<double(double)> psi0;
    std::function<double(double)> phi0;
    double w0 = 0;
};

/// Options for the generic (shooting) solver.
struct ShootingOptions {
    double rel_tol = 1e-10;
    double decay_budget = 35.0;          // e-folds of boundary-condition damping
    std::string mesh_dump_csv;           // when non-empty, dump solver meshes
};

/// Closed forms for the catalog families; inward shooting from truncated
/// endpoints for GenericDiffusion.
EigenSystem solve(const DiffusionSpec& spec, double q);
EigenSystem solve(const DiffusionSpec& spec, double q, const ShootingOptions& opts);

ZeroEigenSystem solve_zero(const DiffusionSpec& spec);

} // namespace lpt
