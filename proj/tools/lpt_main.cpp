// lpt: command-line front end for last-passage-time analysis of transient
// one-dimensional diffusions.
//
//   lpt transform  --spec s.json --q 0.5,1.5 [--output transform.csv]
//   lpt density    --spec s.json --x 0.0 --t-max 10 [--t-points 200]
//   lpt decompose  --spec s.json --q 1.0 [--x-min a --x-max b --x-points n]
//   lpt simulate   --spec s.json --x0 0.0 --paths 100000 --dt 1e-3 --seed 1
//   lpt validate   --spec s.json [--q 0.5,1,2]
//
// Exit codes: 0 success, 1 validation/computation failure, 2 input error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpt/green.hpp"
#include "lpt/last_passage.hpp"
#include "lpt/monte_carlo.hpp"
#include "lpt/spec_io.hpp"
#include "lpt/switching.hpp"

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// default outputs land in LPT_OUTPUT_DIR when it is set
std::string resolve_output(const std::string& requested, const std::string& fallback) {
    if (!requested.empty()) return requested;
    if (const char* dir = std::getenv("LPT_OUTPUT_DIR"))
        return (std::filesystem::path(dir) / fallback).string();
    return fallback;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw lpt::DomainError("cannot open output file '" + path + "'");
    os << content;
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

struct Check {
    std::string name;
    bool pass;
    double worst;
};

int run_transform(const std::string& spec_path, const std::string& qlist,
                  const std::string& output) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::load_spec_file(spec_path));
    lpt::LastPassageAnalyzer an(kit);
    std::ostringstream csv;
    csv << "q,laplace,factor_A,factor_B,gamma_q\n";
    for (double q : parse_list(qlist)) {
        if (!(q > 0.0)) throw lpt::DomainError("transform: q values must be positive");
        csv << fmt(q) << ',' << fmt(an.laplace_at_alpha(q)) << ','
            << fmt(an.factor_above(q)) << ',' << fmt(an.factor_mass(q)) << ','
            << fmt(an.killing_rate(q)) << '\n';
    }
    write_file(resolve_output(output, "transform.csv"), csv.str());
    return 0;
}

int run_density(const std::string& spec_path, double x, double t_max, int t_points,
                const std::string& method, int terms, const std::string& output) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::load_spec_file(spec_path));
    lpt::InversionConfig cfg;
    cfg.terms = terms;
    cfg.method = method == "rho" ? lpt::InversionConfig::Method::GaverWynnRho
                                 : lpt::InversionConfig::Method::GaverStehfest;
    lpt::LastPassageAnalyzer an(kit, cfg);
    const double xv = std::isnan(x) ? kit->alpha() : x;
    const double T = t_max > 0.0 ? t_max : an.adaptive_horizon(xv);

    std::ostringstream csv;
    csv << "# atom_at_zero = " << fmt(an.escape_probability(xv)) << '\n';
    csv << "t,density,cdf\n";
    for (int i = 1; i <= t_points; ++i) {
        const double t = T * i / t_points;
        csv << fmt(t) << ',' << fmt(an.density(t, xv)) << ',' << fmt(an.cdf(t, xv))
            << '\n';
    }
    write_file(resolve_output(output, "density.csv"), csv.str());
    return 0;
}

int run_decompose(const std::string& spec_path, double q, double x_min, double x_max,
                  int x_points, const std::string& output) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::load_spec_file(spec_path));
    const double alpha = kit->alpha();
    const lpt::Interval iv = kit->spec().interval();
    if (std::isnan(x_min))
        x_min = std::isfinite(iv.lower) ? 0.5 * (iv.lower + alpha) : alpha - 2.0;
    if (std::isnan(x_max))
        x_max = std::isfinite(iv.upper) ? 0.5 * (alpha + iv.upper) : alpha + 2.0;
    if (!(x_min < x_max) || !kit->spec().contains(x_min) || !kit->spec().contains(x_max))
        throw lpt::DomainError("decompose: bad x range");

    const double ga = kit->green_above_at_alpha(q);
    const double gb = kit->green_below_at_alpha(q);
    std::ostringstream csv;
    csv << "x,G_q,G_q_via_decomposition,abs_err\n";
    for (int i = 0; i < x_points; ++i) {
        const double x = x_min + (x_max - x_min) * i / (x_points - 1);
        const double direct = kit->green(q, x, alpha);
        const double dec = x >= alpha ? kit->green_above(q, x, alpha) * gb / (ga + gb)
                                      : kit->green_below(q, x, alpha) * ga / (ga + gb);
        csv << fmt(x) << ',' << fmt(direct) << ',' << fmt(dec) << ','
            << fmt(std::abs(direct - dec)) << '\n';
    }
    write_file(resolve_output(output, "decompose.csv"), csv.str());
    return 0;
}

int run_simulate(const std::string& spec_path, double x0, const lpt::McConfig& cfg,
                 const std::string& qlist, const std::string& dump) {
    const lpt::DiffusionSpec spec = lpt::load_spec_file(spec_path);
    const double start = std::isnan(x0) ? spec.alpha() : x0;
    const lpt::McRun run = lpt::simulate(spec, start, cfg);

    std::cout << "paths: " << run.lambda.size() << '\n';
    std::cout << "escaped (lambda = 0): " << run.escape_count << '\n';
    std::cout << "truncated at horizon " << run.horizon_used << ": " << run.truncated
              << (run.truncation_warning ? "  [WARNING: fraction > 1%]" : "") << '\n';
    for (double q : parse_list(qlist)) {
        const lpt::Estimate e = lpt::empirical_laplace(run, q);
        std::cout << "empirical laplace at q=" << q << ": " << fmt(e.value)
                  << " (se " << fmt(e.std_error) << ")\n";
    }
    if (!dump.empty()) {
        std::ostringstream csv;
        lpt::dump_samples_csv(run, csv);
        write_file(dump, csv.str());
    }
    return 0;
}

int run_validate(const std::string& spec_path, const std::string& qlist) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::load_spec_file(spec_path));
    lpt::LastPassageAnalyzer an(kit);
    const double alpha = kit->alpha();
    const lpt::Interval iv = kit->spec().interval();
    const bool generic = kit->spec().is_generic();
    const double tol = generic ? 1e-4 : 1e-8;

    std::vector<double> qs = parse_list(qlist);
    if (qs.empty()) qs = {0.5, 1.0, 2.0};

    const double x_lo = std::isfinite(iv.lower) ? 0.5 * (iv.lower + alpha) : alpha - 2.0;
    const double x_hi = std::isfinite(iv.upper) ? 0.5 * (alpha + iv.upper) : alpha + 2.0;

    std::vector<Check> checks;

    // harmonic sum 1/G^A + 1/G^B = 1/G at (alpha,alpha)
    {
        double worst = 0;
        for (double q : qs) {
            const double lhs = 1.0 / kit->green_above_at_alpha(q) +
                               1.0 / kit->green_below_at_alpha(q);
            const double rhs = 1.0 / kit->green(q, alpha, alpha);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        checks.push_back({"harmonic_sum_at_alpha", worst < tol, worst});
    }
    // Green decomposition G_q(x, alpha)
    {
        double worst = 0;
        for (double q : qs) {
            const double ga = kit->green_above_at_alpha(q);
            const double gb = kit->green_below_at_alpha(q);
            for (int i = 0; i <= 10; ++i) {
                const double x = x_lo + (x_hi - x_lo) * i / 10.0;
                const double direct = kit->green(q, x, alpha);
                const double dec = x >= alpha
                                       ? kit->green_above(q, x, alpha) * gb / (ga + gb)
                                       : kit->green_below(q, x, alpha) * ga / (ga + gb);
                worst = std::max(worst, std::abs(direct - dec) / direct);
            }
        }
        checks.push_back({"green_decomposition", worst < tol, worst});
    }
    // reflecting boundary conditions
    {
        double worst = 0;
        for (double q : qs) {
            const lpt::ReflectedSystem rs = kit->reflected(q);
            auto es = kit->system(q);
            const double da = rs.a1 * es->dpsi_ds(alpha) + rs.a2 * es->dphi_ds(alpha);
            const double db = rs.b1 * es->dpsi_ds(alpha) + rs.b2 * es->dphi_ds(alpha);
            worst = std::max({worst, std::abs(da), std::abs(db)});
        }
        checks.push_back({"reflecting_condition", worst < tol, worst});
    }
    // Prop-2 representation of the first factor
    {
        double worst = 0;
        for (double q : qs) {
            worst = std::max(worst, std::abs(an.factor_above(q) -
                                             an.factor_above_via_killing(q)));
        }
        checks.push_back({"killing_rate_representation", worst < 1e-13, worst});
    }
    // transform sanity: bounds and laplace -> 1 as q -> 0. The mass factor
    // G^B/G_0 is below 1 only in Case 1, where G_0 = G_0^B.
    {
        bool ok = true;
        double worst = 0;
        const bool case1 = kit->boundary_case().tag == lpt::BoundaryCase::Case1;
        for (double q : qs) {
            const double fa = an.factor_above(q), fb = an.factor_mass(q);
            const double lap = an.laplace_at_alpha(q);
            ok = ok && fa > 0 && fa < 1 && fb > 0 && lap > 0 && lap <= 1;
            if (case1) ok = ok && fb < 1;
        }
        const double lap0 = an.laplace_at_alpha(1e-8);
        worst = std::abs(1.0 - lap0);
        ok = ok && worst < 1e-5;
        checks.push_back({"transform_bounds_and_total_mass", ok, worst});
    }

    bool all = true;
    for (const Check& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                  << "  (worst = " << fmt(c.worst) << ")\n";
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"last-passage-time decompositions for 1-d transient diffusions"};
    app.require_subcommand(1);

    std::string spec_path, output, qlist = "1.0", method = "gs", dump;
    double x = std::nan(""), x0 = std::nan("");
    double t_max = 0.0, q_single = 1.0;
    double x_min = std::nan(""), x_max = std::nan("");
    int t_points = 200, x_points = 31, terms = 16;
    lpt::McConfig mc;

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "spec file (JSON)")->required();
    };

    CLI::App* transform = app.add_subcommand("transform", "Laplace transform and decomposition factors");
    add_spec(transform);
    transform->add_option("--q", qlist, "comma-separated q values");
    transform->add_option("--output", output, "output CSV path");

    CLI::App* density = app.add_subcommand("density", "density and CDF of the last passage time");
    add_spec(density);
    density->add_option("--x", x, "start state (default alpha)");
    density->add_option("--t-max", t_max, "time horizon (default adaptive)");
    density->add_option("--t-points", t_points, "grid points");
    density->add_option("--method", method, "inversion method: gs | rho");
    density->add_option("--terms", terms, "inversion terms (even, 4..20)");
    density->add_option("--output", output, "output CSV path");

    CLI::App* decompose = app.add_subcommand("decompose", "Green function vs its decomposition on an x-grid");
    add_spec(decompose);
    decompose->add_option("--q", q_single, "transform rate");
    decompose->add_option("--x-min", x_min, "grid start");
    decompose->add_option("--x-max", x_max, "grid end");
    decompose->add_option("--x-points", x_points, "grid points");
    decompose->add_option("--output", output, "output CSV path");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo last-passage ensemble");
    add_spec(simulate);
    simulate->add_option("--x0", x0, "start state (default alpha)");
    simulate->add_option("--paths", mc.paths, "path count");
    simulate->add_option("--dt", mc.dt, "time step");
    simulate->add_option("--seed", mc.seed, "RNG seed");
    simulate->add_option("--horizon", mc.horizon, "fixed horizon (default auto)");
    simulate->add_option("--workers", mc.workers, "worker threads");
    simulate->add_flag("--antithetic", mc.antithetic, "antithetic pairs");
    simulate->add_option("--q", qlist, "report empirical Laplace at these q");
    simulate->add_option("--dump", dump, "write per-path samples CSV");

    CLI::App* validate = app.add_subcommand("validate", "run the identity suite for a spec");
    add_spec(validate);
    validate->add_option("--q", qlist, "comma-separated q values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (transform->parsed()) return run_transform(spec_path, qlist, output);
        if (density->parsed())
            return run_density(spec_path, x, t_max, t_points, method, terms, output);
        if (decompose->parsed())
            return run_decompose(spec_path, q_single, x_min, x_max, x_points, output);
        if (simulate->parsed()) return run_simulate(spec_path, x0, mc, qlist, dump);
        if (validate->parsed()) return run_validate(spec_path, qlist);
    } catch (const lpt::DomainError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const lpt::CoefficientError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const lpt::NotTransientError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const lpt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
