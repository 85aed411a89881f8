#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "lpt/green.hpp"
#include "lpt/special_functions.hpp"

using namespace lpt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grid_around_alpha(const GreenKit& kit, int n) {
    std::vector<double> xs;
    const double alpha = kit.alpha();
    const bool positive_line = kit.spec().interval().lower == 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        xs.push_back(positive_line ? alpha * std::exp(2.4 * (u - 0.5))
                                   : alpha + 5.0 * (u - 0.5));
    }
    return xs;
}

double decomposed_green(const GreenKit& kit, double q, double x) {
    const double alpha = kit.alpha();
    const double ga = kit.green_above_at_alpha(q);
    const double gb = kit.green_below_at_alpha(q);
    if (x >= alpha) return kit.green_above(q, x, alpha) * gb / (ga + gb);
    return kit.green_below(q, x, alpha) * ga / (ga + gb);
}

} // namespace

TEST_CASE("brownian-with-drift reference values") {
    GreenKit kit(make_brownian_drift(1.0));
    CHECK(kit.green(1.5, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(kit.green_zero(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kit.green_above_at_alpha(1.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kit.green_below_at_alpha(1.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(kit.green_below_zero(0.0, 0.0).value() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kit.green_above_zero(0.0, 0.0).is_infinite());
    CHECK(kit.green_zero_at_alpha() == doctest::Approx(0.5).epsilon(1e-14));

    const ReflectedSystem rs = kit.reflected(1.5);
    CHECK(rs.w_above == doctest::Approx(1.0).epsilon(1e-14));  // sqrt(nu^2+2q)-nu
    CHECK(rs.w_below == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("symmetry of all two-argument evaluators") {
    GreenKit kit(make_switching_brownian(-1.0, -2.0));
    const double pairs[][2] = {{0.3, -0.9}, {1.7, 0.2}, {-0.4, -1.3}, {2.2, 2.9}};
    for (const auto& p : pairs) {
        CHECK(kit.green(1.1, p[0], p[1]) ==
              doctest::Approx(kit.green(1.1, p[1], p[0])).epsilon(1e-14));
        CHECK(kit.green_zero(p[0], p[1]) ==
              doctest::Approx(kit.green_zero(p[1], p[0])).epsilon(1e-14));
    }
    CHECK(kit.green_above(1.1, 0.5, 1.5) ==
          doctest::Approx(kit.green_above(1.1, 1.5, 0.5)).epsilon(1e-14));
    CHECK(kit.green_below(1.1, -0.5, -1.5) ==
          doctest::Approx(kit.green_below(1.1, -1.5, -0.5)).epsilon(1e-14));
}

TEST_CASE("ornstein-uhlenbeck Green value at the origin") {
    GreenKit kit(make_ornstein_uhlenbeck(-1.0));
    // Gamma(2) D_{-2}(0)^2 / (2 sqrt(pi)) = 1/(2 sqrt(pi))
    CHECK(kit.green(1.0, 0.0, 0.0) ==
          doctest::Approx(0.28209479177387814).epsilon(1e-10));
}

TEST_CASE("reflecting boundary conditions at alpha") {
    const DiffusionSpec specs[] = {make_brownian_drift(1.0),
                                   make_ornstein_uhlenbeck(-1.0),
                                   make_geometric_bm(-0.1, 0.75),
                                   make_switching_brownian(-1.0, -2.0)};
    for (const auto& spec : specs) {
        GreenKit kit(spec);
        for (double q : {0.5, 1.5}) {
            const ReflectedSystem rs = kit.reflected(q);
            auto es = kit.system(q);
            const double alpha = kit.alpha();
            const double dpsiA =
                rs.a1 * es->dpsi_ds(alpha) + rs.a2 * es->dphi_ds(alpha);
            const double dphiB =
                rs.b1 * es->dpsi_ds(alpha) + rs.b2 * es->dphi_ds(alpha);
            CHECK(std::abs(dpsiA) < 1e-8);
            CHECK(std::abs(dphiB) < 1e-8);
            CHECK(rs.w_above > 0.0);
            CHECK(rs.w_below > 0.0);
        }
    }
}

TEST_CASE("reflected solutions are monotone on their half-intervals") {
    GreenKit kit(make_ornstein_uhlenbeck(-1.0));
    const ReflectedSystem rs = kit.reflected(1.0);
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = 0.0 + 3.0 * i / 49.0;
        const double v = rs.psi_above(x);
        CHECK(v > 0.0);
        if (i > 0) CHECK(v > prev);
        prev = v;
    }
    prev = kInf;
    for (int i = 0; i < 50; ++i) {
        const double x = -3.0 + 3.0 * i / 49.0;
        const double v = rs.phi_below(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("harmonic-sum identity at (alpha, alpha)") {
    const DiffusionSpec specs[] = {
        make_brownian_drift(1.0),                 // Case 1
        make_brownian_drift(-0.7),                // Case 2
        make_ornstein_uhlenbeck(-1.0),            // Case 3
        make_geometric_bm(-0.1, 0.75),            // Case 1, power family
        make_switching_gbm(-0.1, 0.75, -0.1, 1.5, 100.0)};
    for (const auto& spec : specs) {
        GreenKit kit(spec);
        const double alpha = kit.alpha();
        for (double q : {0.5, 1.0, 2.0}) {
            const double lhs = 1.0 / kit.green_above_at_alpha(q) +
                               1.0 / kit.green_below_at_alpha(q);
            const double rhs = 1.0 / kit.green(q, alpha, alpha);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
    // q = 0 version holds in Case 3
    GreenKit ou(make_ornstein_uhlenbeck(-1.0));
    const double lhs = ou.green_above_zero(0.0, 0.0).reciprocal() +
                       ou.green_below_zero(0.0, 0.0).reciprocal();
    CHECK(lhs == doctest::Approx(1.0 / ou.green_zero_at_alpha()).epsilon(1e-12));
}

TEST_CASE("q = 0 identities per case") {
    // Case 1: G_0^B == G_0
    GreenKit c1(make_brownian_drift(1.0));
    for (double x : {-1.0, -0.3, 0.0}) {
        CHECK(c1.green_below_zero(x, 0.0).value() ==
              doctest::Approx(c1.green_zero(x, 0.0)).epsilon(1e-13));
    }
    // Case 2 mirror: G_0^A == G_0
    GreenKit c2(make_brownian_drift(-1.0));
    for (double x : {0.0, 0.4, 1.5}) {
        CHECK(c2.green_above_zero(x, 0.0).value() ==
              doctest::Approx(c2.green_zero(x, 0.0)).epsilon(1e-13));
    }
    // Case 3: approaching the killed boundary sends G_0 to 0
    GreenKit c3(make_ornstein_uhlenbeck(-1.0));
    CHECK(c3.green_zero(-6.0, 0.0) < 1e-12);
}

TEST_CASE("q -> 0 limit of G_q matches G_0") {
    GreenKit kit(make_brownian_drift(1.0));
    CHECK(kit.green(1e-8, 0.3, -0.2) ==
          doctest::Approx(kit.green_zero(0.3, -0.2)).epsilon(1e-6));
}

TEST_CASE("Green decomposition across the catalog") {
    const DiffusionSpec specs[] = {
        make_brownian_drift(1.0), make_brownian_drift(-0.7),
        make_ornstein_uhlenbeck(-1.0), make_geometric_bm(-0.1, 0.75),
        make_switching_brownian(-1.0, -2.0),
        make_switching_gbm(-0.1, 0.75, -0.1, 1.5, 100.0)};
    for (const auto& spec : specs) {
        GreenKit kit(spec);
        for (double q : {0.5, 1.0, 2.0}) {
            for (double x : grid_around_alpha(kit, 11)) {
                const double direct = kit.green(q, x, kit.alpha());
                const double dec = decomposed_green(kit, q, x);
                CHECK(dec == doctest::Approx(direct).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("Green decomposition through the generic solver") {
    const DiffusionSpec gen(
        GenericDiffusion{[](double x) { return -0.5 - 0.2 * std::tanh(x); },
                         [](double) { return 1.0; }},
        Interval{-kInf, kInf}, 0.0);
    GreenKit kit(gen);
    for (double q : {0.7, 1.5}) {
        for (double x : grid_around_alpha(kit, 7)) {
            const double direct = kit.green(q, x, kit.alpha());
            const double dec = decomposed_green(kit, q, x);
            CHECK(dec == doctest::Approx(direct).epsilon(1e-5));
        }
    }
}

TEST_CASE("OU decomposition reproduces the parabolic-cylinder closed form") {
    GreenKit kit(make_ornstein_uhlenbeck(-1.0));
    for (double q : {0.5, 1.0, 2.0}) {
        const double norm = std::tgamma(q + 1.0) / (2.0 * std::sqrt(M_PI));
        const double d0 = parabolic_cylinder_D(-(q + 1.0), 0.0);
        for (double x = -2.0; x <= 2.0 + 1e-12; x += 0.25) {
            const double closed = norm * d0 * std::exp(-0.5 * x * x) *
                                  parabolic_cylinder_D(-(q + 1.0),
                                                       std::sqrt(2.0) * std::abs(x));
            CHECK(decomposed_green(kit, q, x) ==
                  doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("half-interval domain errors") {
    GreenKit kit(make_brownian_drift(1.0));
    CHECK_THROWS_AS(kit.green_above(1.0, -0.1, 0.5), DomainError);
    CHECK_THROWS_AS(kit.green_below(1.0, 0.1, -0.5), DomainError);
    CHECK_THROWS_AS(kit.green_above_zero(-0.1, 0.5), DomainError);
    CHECK_THROWS_AS(kit.green(-1.0, 0.0, 0.0), DomainError);
}
