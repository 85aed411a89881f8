#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "lpt/diffusion.hpp"

namespace lpt {

struct McConfig {
    double dt = 1e-3;
    double horizon = 0.0;      // 0: grow by doubling until the active fraction < 0.1%
    std::int64_t paths = 100000;
    std::uint64_t seed = 1;
    double kill_band = 0.0;    // distance to a finite absorbing endpoint; 0: derive
                               // the cut from a 1e-6 return probability in scale units
    bool antithetic = false;
    int workers = 1;           // paths are seeded per-index, so results do not
                               // depend on the partitioning
};

/// Simulated ensemble. lambda_above + lambda_below == lambda holds exactly
/// per path: the occupation split is accounted in integer steps of dt.
struct McRun {
    std::vector<double> lambda;         // last passage time of alpha (0 if never hit)
    std::vector<double> lambda_above;   // occupation time >= alpha up to lambda
    std::vector<double> lambda_below;   // occupation time  < alpha up to lambda
    std::vector<std::uint8_t> escaped;  // never touched alpha
    std::int64_t escape_count = 0;
    std::int64_t truncated = 0;         // still active at the horizon
    double horizon_used = 0.0;
    bool truncation_warning = false;    // active fraction above 1%
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Euler-Maruyama ensemble with last-passage accounting. GBM families are
/// stepped on exact per-regime log-dynamics; the Brownian-drift family adds
/// an exact sub-grid bridge-crossing correction. Deterministic for a fixed
/// seed regardless of the worker count.
McRun simulate(const DiffusionSpec& spec, double x0, const McConfig& cfg);

/// Mean of e^{-q lambda} with its standard error.
Estimate empirical_laplace(const McRun& run, double q);

/// Sorted lambda samples (the empirical CDF's jump points).
std::vector<double> empirical_cdf(const McRun& run);

/// One-sample Kolmogorov-Smirnov distance against a reference CDF that
/// includes its atom at 0.
double ks_distance(const McRun& run, const std::function<double(double)>& cdf);

/// CSV dump: t_lambda, lambda_A, lambda_B, escaped.
void dump_samples_csv(const McRun& run, std::ostream& os);

} // namespace lpt
