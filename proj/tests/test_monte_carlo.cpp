#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "lpt/last_passage.hpp"
#include "lpt/monte_carlo.hpp"
#include "lpt/switching.hpp"

using namespace lpt;

namespace {

McConfig quick_config(std::int64_t paths, double dt = 1e-3) {
    McConfig cfg;
    cfg.paths = paths;
    cfg.dt = dt;
    cfg.seed = 20240811;
    return cfg;
}

} // namespace

TEST_CASE("per-path occupation identity is exact") {
    const McRun run = simulate(make_brownian_drift(1.0), 0.0, quick_config(500));
    for (std::size_t i = 0; i < run.lambda.size(); ++i) {
        CHECK(run.lambda[i] == run.lambda_above[i] + run.lambda_below[i]);
    }
}

TEST_CASE("degenerate horizon: nothing happens") {
    McConfig cfg = quick_config(200);
    cfg.horizon = cfg.dt;  // a single step
    const McRun run = simulate(make_brownian_drift(1.0), 0.0, cfg);
    CHECK(run.escape_count == 0);  // started at alpha, touched at t = 0
    for (double l : run.lambda) CHECK(l <= cfg.dt);
    CHECK(run.truncation_warning);  // nearly all paths still active
}

TEST_CASE("deterministic and independent of the worker partition") {
    const DiffusionSpec spec = make_switching_brownian(-1.0, -2.0);
    McConfig cfg = quick_config(400);
    const McRun a = simulate(spec, 0.0, cfg);
    const McRun b = simulate(spec, 0.0, cfg);
    cfg.workers = 3;
    const McRun c = simulate(spec, 0.0, cfg);
    CHECK(a.lambda == b.lambda);
    CHECK(a.lambda == c.lambda);
    CHECK(a.escape_count == c.escape_count);
}

TEST_CASE("empirical laplace basics") {
    const McRun run = simulate(make_brownian_drift(1.0), 0.0, quick_config(2000));
    CHECK(empirical_laplace(run, 0.0).value == 1.0);
    const Estimate e = empirical_laplace(run, 1.5);
    CHECK(e.value > 0.0);
    CHECK(e.value < 1.0);
    CHECK(e.std_error > 0.0);
    McRun empty;
    CHECK_THROWS_AS(empirical_laplace(empty, 1.0), DomainError);
}

TEST_CASE("brownian drift matches the analytic transform") {
    const McRun run = simulate(make_brownian_drift(1.0), 0.0, quick_config(100000));
    const Estimate e = empirical_laplace(run, 1.5);
    CHECK(std::abs(e.value - 0.5) < 3.0 * e.std_error);
}

TEST_CASE("two-valued drift matches the switching closed form") {
    const McRun run =
        simulate(make_switching_brownian(-1.0, -2.0), 0.0, quick_config(100000));
    const Estimate e = empirical_laplace(run, 1.5);
    const double exact = switching_bm_laplace(-1.0, -2.0, 1.5);
    CHECK(std::abs(e.value - exact) < 3.0 * e.std_error);
}

TEST_CASE("escape frequency matches the scale-ratio limit in Case 3") {
    const DiffusionSpec spec = make_ornstein_uhlenbeck(-1.0);
    McConfig cfg = quick_config(20000, 5e-4);
    const McRun run = simulate(spec, 1.0, cfg);
    const double p = 0.84270079294971487;  // erf(1)
    const double freq =
        static_cast<double>(run.escape_count) / static_cast<double>(run.lambda.size());
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(run.lambda.size()));
    CHECK(std::abs(freq - p) < 3.0 * se);
}

TEST_CASE("halving dt moves the estimate by less than two standard errors") {
    const DiffusionSpec spec = make_brownian_drift(1.0);
    const Estimate coarse = empirical_laplace(simulate(spec, 0.0, quick_config(30000, 1e-3)), 1.0);
    const Estimate fine = empirical_laplace(simulate(spec, 0.0, quick_config(30000, 5e-4)), 1.0);
    const double se = std::hypot(coarse.std_error, fine.std_error);
    CHECK(std::abs(coarse.value - fine.value) < 2.0 * se);
}

TEST_CASE("antithetic pairing keeps the estimator unbiased") {
    const DiffusionSpec spec = make_brownian_drift(1.0);
    McConfig cfg = quick_config(40000);
    cfg.antithetic = true;
    const Estimate e = empirical_laplace(simulate(spec, 0.0, cfg), 1.5);
    CHECK(std::abs(e.value - 0.5) < 4.0 * e.std_error);
}

TEST_CASE("ks distance against itself and against the inverted cdf") {
    const McRun run = simulate(make_ornstein_uhlenbeck(-1.0), 0.0, quick_config(20000));
    // self-comparison through the empirical step function
    const std::vector<double> sorted = empirical_cdf(run);
    auto self_cdf = [&sorted](double t) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
        return static_cast<double>(it - sorted.begin()) / sorted.size();
    };
    CHECK(ks_distance(run, self_cdf) <= 2.0 / sorted.size() + 1e-12);

    // cross-validation of the two independent pipelines; the reference CDF
    // is tabulated on a log grid and interpolated (it is smooth in t)
    auto kit = std::make_shared<GreenKit>(make_ornstein_uhlenbeck(-1.0));
    LastPassageAnalyzer an(kit);
    const double t_lo = 5e-4, t_hi = 64.0;
    const int nodes = 240;
    std::vector<double> ts(nodes), Fs(nodes);
    for (int i = 0; i < nodes; ++i) {
        ts[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (nodes - 1));
        Fs[i] = an.cdf(ts[i], 0.0);
    }
    auto cdf = [&](double t) {
        if (t <= 0.0) return 0.0;
        if (t <= ts.front()) return Fs.front() * std::sqrt(t / ts.front());
        if (t >= ts.back()) return Fs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - ts.begin());
        const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
        return Fs[j - 1] + w * (Fs[j] - Fs[j - 1]);
    };
    CHECK(ks_distance(run, cdf) < 0.015);
}

TEST_CASE("truncation is flagged, gbm stays positive") {
    McConfig cfg = quick_config(500);
    cfg.horizon = 0.25;
    const McRun run = simulate(make_geometric_bm(-0.1, 0.75), 1.0, cfg);
    CHECK(run.truncated > 0);
    CHECK(run.truncation_warning);

    std::ostringstream os;
    dump_samples_csv(run, os);
    CHECK(os.str().rfind("t_lambda,lambda_A,lambda_B,escaped\n", 0) == 0);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(simulate(make_brownian_drift(1.0), 0.0, McConfig{.dt = 0.0}),
                    DomainError);
    CHECK_THROWS_AS(simulate(make_geometric_bm(-0.1, 0.75), -1.0, McConfig{}),
                    DomainError);
}
