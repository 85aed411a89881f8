#pragma once

namespace lpt {

// Closed forms for the two-regime examples. Kept as an independent code
// path from the generic eigenfunction pipeline on purpose: each side
// validates the other in the test suites.

/// E^alpha[e^{-q lambda_alpha}] for unit-volatility Brownian motion whose
/// drift is mu_above at/above the level and mu_below under it.
/// Requires mu_above < 0, mu_below < 0 (transient, Case 1), q > 0.
double switching_bm_laplace(double mu_above, double mu_below, double q);

/// G_q(alpha, alpha) for the same process (scale fixed by s'(alpha) = 1).
double switching_bm_green(double mu_above, double mu_below, double q);

/// E^alpha[e^{-q lambda_alpha}] for geometric Brownian motion with a
/// regime switch at alpha > 0. Requires nu_i = mu_i/sigma_i^2 - 1/2 < 0 on
/// both sides and q > 0. The value does not depend on alpha: scaling the
/// state space maps the switching GBM at alpha onto the one at 1 without
/// changing lambda's law.
double switching_gbm_laplace(double mu_above, double sigma_above, double mu_below,
                             double sigma_below, double alpha, double q);

} // namespace lpt
