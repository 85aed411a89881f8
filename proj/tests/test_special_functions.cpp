#include <doctest.h>

#include <cmath>
#include <vector>

#include "lpt/errors.hpp"
#include "lpt/special_functions.hpp"

using namespace lpt;

namespace {

// Independent oracle: integrate f'' = (x^2/4 + a - 1/2) f inward from
// asymptotic initial data at x0 = 12, classic RK4 with a fine fixed step.
// D_{-a}(x) ~ e^{-x^2/4} x^{-a} sum_k (-1)^k (a)_{2k} / (2^k k! x^{2k}).
double asymptotic_D(double a, double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= -(a + 2.0 * k - 2.0) * (a + 2.0 * k - 1.0) / (2.0 * k * x * x);
        sum += term;
    }
    return std::exp(-0.25 * x * x) * std::pow(x, -a) * sum;
}

double ode_oracle_D(double a, double x_target) {
    const double x0 = 20.0;
    REQUIRE(x_target < x0);
    double f = asymptotic_D(a, x0);
    // D'_{-a}(x) = -(x/2) D_{-a}(x) - a D_{-a-1}(x), seeded from asymptotics
    double fp = -0.5 * x0 * f - a * asymptotic_D(a + 1.0, x0);

    auto rhs = [a](double x, double y0, double y1, double& d0, double& d1) {
        d0 = y1;
        d1 = (0.25 * x * x + a - 0.5) * y0;
    };
    const int n = static_cast<int>(std::ceil((x0 - x_target) / 1e-4));
    const double h = -(x0 - x_target) / n;
    double x = x0;
    for (int i = 0; i < n; ++i) {
        double k1f, k1p, k2f, k2p, k3f, k3p, k4f, k4p;
        rhs(x, f, fp, k1f, k1p);
        rhs(x + h / 2, f + h / 2 * k1f, fp + h / 2 * k1p, k2f, k2p);
        rhs(x + h / 2, f + h / 2 * k2f, fp + h / 2 * k2p, k3f, k3p);
        rhs(x + h, f + h * k3f, fp + h * k3p, k4f, k4p);
        f += h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f);
        fp += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        x += h;
    }
    return f;
}

} // namespace

TEST_CASE("identity order: D_0(x) = e^{-x^2/4}") {
    CHECK(parabolic_cylinder_D(0.0, 0.0) == 1.0);
    CHECK(parabolic_cylinder_D(0.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("frozen values from the ODE oracle") {
    // D_{-1}(0) = sqrt(pi/2)
    CHECK(parabolic_cylinder_D(-1.0, 0.0) ==
          doctest::Approx(1.2533141373155003).epsilon(1e-12));
    // D_{-2}(1), oracle-computed
    CHECK(parabolic_cylinder_D(-2.0, 1.0) ==
          doctest::Approx(0.26815704199174419).epsilon(1e-12));
    CHECK(parabolic_cylinder_D(-1.5, -2.5) ==
          doctest::Approx(20.805763329797514).epsilon(1e-12));
    CHECK(parabolic_cylinder_D(-3.7, 4.0) ==
          doctest::Approx(7.0751215461684076e-05).epsilon(1e-11));
    // beyond the series range, both signs
    CHECK(parabolic_cylinder_D(-2.25, 9.0) ==
          doctest::Approx(1.0957841410561373e-11).epsilon(1e-10));
    CHECK(parabolic_cylinder_D(-2.25, -9.0) ==
          doctest::Approx(21526114573.683996).epsilon(1e-10));
}

TEST_CASE("agrees with the ODE-integration oracle on a sweep") {
    const std::vector<double> orders = {-0.5, -1.0, -2.0, -3.25, -5.5};
    const std::vector<double> xs = {-6.0, -3.0, -1.0, -0.2, 0.0, 0.4, 1.5, 3.0, 6.0};
    for (double ord : orders) {
        for (double x : xs) {
            const double got = parabolic_cylinder_D(ord, x);
            const double want = ode_oracle_D(-ord, x);
            CHECK(got == doctest::Approx(want).epsilon(5e-9));
        }
    }
}

TEST_CASE("recurrence D_{v+1} - x D_v + v D_{v-1} = 0") {
    for (double x : {-4.0, -1.0, 0.3, 2.0, 5.0}) {
        const double v = -1.25;
        const double lhs = parabolic_cylinder_D(v + 1.0, x) -
                           x * parabolic_cylinder_D(v, x) +
                           v * parabolic_cylinder_D(v - 1.0, x);
        const double mag = std::abs(parabolic_cylinder_D(v, x));
        CHECK(std::abs(lhs) < 1e-11 * std::max(1.0, mag));
    }
}

TEST_CASE("log variant matches the plain one and extends its range") {
    for (double ord : {-1.0, -4.5}) {
        for (double x : {-5.0, 0.7, 6.0}) {
            CHECK(log_parabolic_cylinder_D(ord, x) ==
                  doctest::Approx(std::log(parabolic_cylinder_D(ord, x))).epsilon(1e-10));
        }
    }
    // far outside double range for the plain value
    const double ln = log_parabolic_cylinder_D(-400.0, 3.0);
    CHECK(std::isfinite(ln));
    CHECK(ln < -708.0);
    CHECK_THROWS_AS(parabolic_cylinder_D(-400.0, -100.0), RangeError);
}

TEST_CASE("positive order rejected") {
    CHECK_THROWS_AS(parabolic_cylinder_D(0.5, 1.0), DomainError);
}
