#include "lpt/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace lpt {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stepping model in the evolution coordinate (state, or log-state for the
// geometric families).
struct StepModel {
    enum class Kind { Linear, LinearSwitch, MeanFlee, Log, LogSwitch, Generic };
    Kind kind;
    double level;        // alpha in the evolution coordinate
    double p1 = 0, p2 = 0, p3 = 0, p4 = 0;
    const DiffusionSpec* spec = nullptr;

    void coeffs(double y, double& mu, double& sg) const {
        switch (kind) {
            case Kind::Linear:        // p1 = drift
                mu = p1; sg = 1.0; return;
            case Kind::LinearSwitch:  // p1 = mu_above, p2 = mu_below
                mu = y >= level ? p1 : p2; sg = 1.0; return;
            case Kind::MeanFlee:      // p1 = -kappa
                mu = p1 * y; sg = 1.0; return;
            case Kind::Log:           // p1 = mu - sigma^2/2, p2 = sigma
                mu = p1; sg = p2; return;
            case Kind::LogSwitch:     // above: (p1,p2), below: (p3,p4)
                if (y >= level) { mu = p1; sg = p2; } else { mu = p3; sg = p4; }
                return;
            case Kind::Generic:
                mu = spec->drift(y); sg = spec->volatility(y); return;
        }
    }
};

StepModel build_model(const DiffusionSpec& spec) {
    StepModel m;
    m.spec = &spec;
    const double alpha = spec.alpha();
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                m.kind = StepModel::Kind::Linear;
                m.level = alpha;
                m.p1 = -fam.nu;
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                m.kind = StepModel::Kind::MeanFlee;
                m.level = alpha;
                m.p1 = -fam.kappa;
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                m.kind = StepModel::Kind::LinearSwitch;
                m.level = alpha;
                m.p1 = fam.mu_above;
                m.p2 = fam.mu_below;
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                m.kind = StepModel::Kind::Log;
                m.level = std::log(alpha);
                m.p1 = fam.mu - 0.5 * fam.sigma * fam.sigma;
                m.p2 = fam.sigma;
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                m.kind = StepModel::Kind::LogSwitch;
                m.level = std::log(alpha);
                m.p1 = fam.mu_above - 0.5 * fam.sigma_above * fam.sigma_above;
                m.p2 = fam.sigma_above;
                m.p3 = fam.mu_below - 0.5 * fam.sigma_below * fam.sigma_below;
                m.p4 = fam.sigma_below;
            } else {
                m.kind = StepModel::Kind::Generic;
                m.level = alpha;
            }
        },
        spec.family());
    return m;
}

// state -> evolution coordinate
double to_coord(const StepModel& m, double x) {
    return (m.kind == StepModel::Kind::Log || m.kind == StepModel::Kind::LogSwitch)
               ? std::log(x)
               : x;
}
double from_coord(const StepModel& m, double y) {
    return (m.kind == StepModel::Kind::Log || m.kind == StepModel::Kind::LogSwitch)
               ? std::exp(y)
               : y;
}

struct KillLimits {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// Absorption cuts for attracting boundaries: by default at the point whose
// return probability to alpha is 1e-6 (in scale units); an explicit
// kill_band overrides with a plain distance (from a finite endpoint, or
// from alpha when the endpoint is infinite).
KillLimits absorption_limits(const DiffusionSpec& spec, const StepModel& model,
                             const McConfig& cfg) {
    const CaseClass cc = classify(spec);
    const double alpha = spec.alpha();
    const double s_alpha = scale(spec, alpha);
    const Interval iv = spec.interval();
    KillLimits lim;

    auto expand_to_cut = [&](bool lower) {
        // march outward until the return probability to alpha drops to 1e-6
        const double target = 1e-6;
        double step = lower ? (std::isfinite(iv.lower) ? (alpha - iv.lower) * 0.5 : 1.0)
                            : (std::isfinite(iv.upper) ? (iv.upper - alpha) * 0.5 : 1.0);
        double x = alpha;
        for (int i = 0; i < 200; ++i) {
            double nxt = lower ? x - step : x + step;
            if (lower && std::isfinite(iv.lower))
                nxt = std::max(nxt, iv.lower + 0.25 * (x - iv.lower));
            if (!lower && std::isfinite(iv.upper))
                nxt = std::min(nxt, iv.upper - 0.25 * (iv.upper - x));
            x = nxt;
            const double sx = scale(spec, x);
            const double ret = lower ? (sx - cc.s_lower) / (s_alpha - cc.s_lower)
                                     : (cc.s_upper - sx) / (cc.s_upper - s_alpha);
            if (ret <= target) return x;
            step *= 2.0;
        }
        return x;
    };

    if (std::isfinite(cc.s_lower)) {
        double cut;
        if (cfg.kill_band > 0.0) {
            cut = std::isfinite(iv.lower) ? iv.lower + cfg.kill_band
                                          : alpha - cfg.kill_band;
        } else {
            cut = expand_to_cut(true);
        }
        lim.lo = to_coord(model, cut);
    }
    if (std::isfinite(cc.s_upper)) {
        double cut;
        if (cfg.kill_band > 0.0) {
            cut = std::isfinite(iv.upper) ? iv.upper - cfg.kill_band
                                          : alpha + cfg.kill_band;
        } else {
            cut = expand_to_cut(false);
        }
        lim.hi = to_coord(model, cut);
    }
    return lim;
}

struct PathResult {
    double lambda = 0, above = 0, below = 0;
    bool touched = false;
    bool truncated = false;
};

PathResult run_path(const StepModel& model, const KillLimits& lim, double y0,
                    double dt, std::int64_t max_steps, std::mt19937_64& rng,
                    bool antithetic_mirror) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double level = model.level;
    const double sqrt_dt = std::sqrt(dt);

    PathResult res;
    double y = y0;
    std::int64_t n_above = 0, n_below = 0;
    if (y0 == level) {
        res.touched = true;  // lambda snapshot at t = 0
    }

    for (std::int64_t n = 0; n < max_steps; ++n) {
        if (y >= level) ++n_above; else ++n_below;

        double mu, sg;
        model.coeffs(y, mu, sg);
        double z = normal(rng);
        if (antithetic_mirror) z = -z;
        const double y_new = y + mu * dt + sg * sqrt_dt * z;

        bool crossed = (y - level) * (y_new - level) <= 0.0;
        if (!crossed) {
            // Sub-grid crossing of the Brownian bridge between same-side
            // points. Each Euler step freezes the coefficients, so this is
            // the exact crossing law of the simulated step; skip the draw
            // when the probability is negligible.
            const double prod = (y - level) * (y_new - level);
            if (prod < 14.0 * sg * sg * dt) {
                const double p = std::exp(-2.0 * prod / (sg * sg * dt));
                if (unif(rng) < p) crossed = true;
            }
        }
        y = y_new;
        if (crossed) {
            res.touched = true;
            res.above = n_above * dt;
            res.below = n_below * dt;
            // lambda as the sum of the two occupation terms keeps the
            // per-path identity lambda = lambda_A + lambda_B exact
            res.lambda = res.above + res.below;
        }
        if (y <= lim.lo || y >= lim.hi) return res;  // absorbed / escaped
    }
    res.truncated = true;
    return res;
}

} // namespace

McRun simulate(const DiffusionSpec& spec, double x0, const McConfig& cfg) {
    if (!spec.contains(x0)) throw DomainError("simulate: x0 outside the state interval");
    if (!(cfg.dt > 0.0) || cfg.paths < 1)
        throw DomainError("simulate: dt must be positive and paths >= 1");

    const StepModel model = build_model(spec);
    const KillLimits lim = absorption_limits(spec, model, cfg);
    const double y0 = to_coord(model, x0);
    const double horizon = cfg.horizon > 0.0 ? cfg.horizon : 4096.0;
    const auto max_steps = static_cast<std::int64_t>(std::ceil(horizon / cfg.dt));

    McRun run;
    run.horizon_used = horizon;
    run.lambda.resize(cfg.paths);
    run.lambda_above.resize(cfg.paths);
    run.lambda_below.resize(cfg.paths);
    run.escaped.resize(cfg.paths);

    // Paths are seeded by index, so any partition over workers produces the
    // same ensemble; antithetic pairs share a stream index.
    const int workers = std::max(1, cfg.workers);
    std::vector<std::int64_t> tallies(workers, 0);
    auto work = [&](std::int64_t begin, std::int64_t end, int w) {
        for (std::int64_t i = begin; i < end; ++i) {
            const std::uint64_t stream = cfg.antithetic ? i / 2 : i;
            const bool mirror = cfg.antithetic && (i % 2 == 1);
            std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(stream)));
            const PathResult pr =
                run_path(model, lim, y0, cfg.dt, max_steps, rng, mirror);
            run.lambda[i] = pr.lambda;
            run.lambda_above[i] = pr.above;
            run.lambda_below[i] = pr.below;
            run.escaped[i] = pr.touched ? 0 : 1;
            if (pr.truncated) ++tallies[w];
        }
    };

    if (workers == 1) {
        work(0, cfg.paths, 0);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (cfg.paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t b = w * chunk;
            const std::int64_t e = std::min<std::int64_t>(cfg.paths, b + chunk);
            if (b >= e) break;
            pool.emplace_back([&work, b, e, w]() { work(b, e, w); });
        }
        for (auto& th : pool) th.join();
    }
    for (auto c : tallies) run.truncated += c;

    for (auto e : run.escaped)
        if (e) ++run.escape_count;
    run.truncation_warning =
        run.truncated > 0 &&
        static_cast<double>(run.truncated) / static_cast<double>(cfg.paths) > 0.01;
    return run;
}

Estimate empirical_laplace(const McRun& run, double q) {
    if (run.lambda.empty()) throw DomainError("empirical_laplace: empty run");
    if (q < 0.0) throw DomainError("empirical_laplace: q must be nonnegative");
    double sum = 0.0, sum2 = 0.0;
    for (double l : run.lambda) {
        const double v = std::exp(-q * l);
        sum += v;
        sum2 += v * v;
    }
    const double n = static_cast<double>(run.lambda.size());
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    return Estimate{mean, std::sqrt(var / n)};
}

std::vector<double> empirical_cdf(const McRun& run) {
    if (run.lambda.empty()) throw DomainError("empirical_cdf: empty run");
    std::vector<double> s = run.lambda;
    std::sort(s.begin(), s.end());
    return s;
}

double ks_distance(const McRun& run, const std::function<double(double)>& cdf) {
    const std::vector<double> s = empirical_cdf(run);
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double F = cdf(s[i]);
        d = std::max(d, std::abs((i + 1) / n - F));
        d = std::max(d, std::abs(i / n - F));
    }
    return d;
}

void dump_samples_csv(const McRun& run, std::ostream& os) {
    os << "t_lambda,lambda_A,lambda_B,escaped\n";
    os.precision(17);
    for (std::size_t i = 0; i < run.lambda.size(); ++i) {
        os << run.lambda[i] << ',' << run.lambda_above[i] << ','
           << run.lambda_below[i] << ',' << int(run.escaped[i]) << '\n';
    }
}

} // namespace lpt
