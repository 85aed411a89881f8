#include <doctest.h>

#include <cmath>
#include <memory>

#include "lpt/last_passage.hpp"
#include "lpt/laplace_inversion.hpp"

using namespace lpt;

TEST_CASE("textbook transform pairs") {
    InversionConfig cfg;
    // F = 1/(q+1)  ->  e^{-t}
    CHECK(std::abs(invert([](double q) { return 1.0 / (q + 1.0); }, 1.0, cfg) -
                   std::exp(-1.0)) < 1e-6);
    // F = 1/q^2  ->  t
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(invert([](double q) { return 1.0 / (q * q); }, t, cfg) ==
              doctest::Approx(t).epsilon(1e-8));
    }
    // F = 1/q -> 1, which is the weight identity sum_k zeta_k / k = 1
    CHECK(invert([](double q) { return 1.0 / q; }, 3.7, cfg) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("wynn-rho acceleration on the same pairs") {
    InversionConfig cfg;
    cfg.method = InversionConfig::Method::GaverWynnRho;
    CHECK(std::abs(invert([](double q) { return 1.0 / (q + 1.0); }, 1.0, cfg) -
                   std::exp(-1.0)) < 1e-5);
    CHECK(invert([](double q) { return 1.0 / (q * q); }, 2.0, cfg) ==
          doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("deterministic for a fixed configuration") {
    InversionConfig cfg;
    auto F = [](double q) { return 1.0 / std::sqrt(q * (q + 2.0)); };
    const double a = invert(F, 0.8, cfg);
    const double b = invert(F, 0.8, cfg);
    CHECK(a == b);
}

TEST_CASE("config validation") {
    InversionConfig cfg;
    cfg.terms = 15;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.terms = 2;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.terms = 22;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.terms = 16;
    cfg.t_grid = {1.0, 0.5};
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.t_grid = {0.5, 1.0};
    CHECK_NOTHROW(cfg.validate());
    CHECK_THROWS_AS(invert([](double q) { return 1.0 / q; }, 0.0, InversionConfig{}),
                    DomainError);
}

TEST_CASE("non-finite transform reports the offending abscissa") {
    auto F = [](double q) { return q > 5.0 ? std::nan("") : 1.0 / q; };
    try {
        invert(F, 0.5, InversionConfig{});
        FAIL("expected InversionError");
    } catch (const InversionError& e) {
        CHECK(e.abscissa() > 5.0);
    }
}

TEST_CASE("inverted last-passage density is nonnegative up to ringing") {
    auto kit = std::make_shared<GreenKit>(make_brownian_drift(1.0));
    LastPassageAnalyzer an(kit);
    for (int i = 1; i <= 60; ++i) {
        const double t = 0.2 * i;
        CHECK(an.density_raw(t, 0.0) > -1e-6);
        CHECK(an.density(t, 0.0) >= 0.0);
    }
}

TEST_CASE("stehfest weights alternate and grow with the term count") {
    const auto w8 = stehfest_weights(8);
    CHECK(w8.size() == 8);
    // classical n = 8 values start -1/3, 145/3, ...
    CHECK(w8[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(w8[1] == doctest::Approx(145.0 / 3.0).epsilon(1e-12));
    double s = 0.0;
    for (int k = 1; k <= 8; ++k) s += w8[k - 1] / k;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-11));
}
