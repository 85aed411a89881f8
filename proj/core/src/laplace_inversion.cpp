#include "lpt/laplace_inversion.hpp"

#include <cmath>
#include <numbers>

#include "lpt/errors.hpp"

namespace lpt {
namespace {

constexpr double kLn2 = std::numbers::ln2;

double safe_F(const std::function<double(double)>& F, double q) {
    const double v = F(q);
    if (!std::isfinite(v))
        throw InversionError("laplace inversion: transform not finite", q);
    return v;
}

double gaver_stehfest(const std::function<double(double)>& F, double t, int n) {
    const auto w = stehfest_weights(n);
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) sum += w[k - 1] * safe_F(F, k * kLn2 / t);
    return sum * kLn2 / t;
}

// Gaver functionals f_m accelerated with Wynn's rho algorithm.
double gaver_wynn_rho(const std::function<double(double)>& F, double t, int n) {
    const int m = n / 2;
    std::vector<double> fv(2 * m + 1);
    for (int k = 1; k <= 2 * m; ++k) fv[k] = safe_F(F, k * kLn2 / t);

    std::vector<double> gaver(m + 1, 0.0);
    for (int j = 1; j <= m; ++j) {
        // f_j = j ln2/t * C(2j, j) * sum_{k=0}^{j} (-1)^k C(j,k) F((j+k) ln2/t)
        double sum = 0.0;
        for (int k = 0; k <= j; ++k) {
            const double c = std::exp(std::lgamma(j + 1.0) - std::lgamma(k + 1.0) -
                                      std::lgamma(j - k + 1.0));
            sum += (k % 2 == 0 ? c : -c) * fv[j + k];
        }
        const double binom = std::exp(std::lgamma(2.0 * j + 1.0) -
                                      2.0 * std::lgamma(j + 1.0));
        gaver[j] = j * kLn2 / t * binom * sum;
    }

    // rho table over the sequence gaver[1..m] with abscissae x_j = j
    std::vector<double> km1(m, 0.0), km2(m + 1, 0.0);  // k-1 and k-2 columns
    for (int j = 0; j < m; ++j) km1[j] = gaver[j + 1];
    double best = km1.empty() ? 0.0 : km1[0];
    for (int k = 1; k < m; ++k) {
        std::vector<double> cur(m - k, 0.0);
        for (int j = 0; j < m - k; ++j) {
            const double den = km1[j + 1] - km1[j];
            if (den == 0.0) {
                cur[j] = km1[j + 1];
            } else {
                cur[j] = km2[j + 1] + k / den;
            }
        }
        if (k % 2 == 0 && !cur.empty() && std::isfinite(cur[0])) best = cur[0];
        km2 = km1;
        km1 = cur;
    }
    return best;
}

} // namespace

void InversionConfig::validate() const {
    if (terms % 2 != 0 || terms < 4 || terms > 20)
        throw DomainError("InversionConfig: terms must be even and in [4, 20]");
    double prev = 0.0;
    for (double t : t_grid) {
        if (!(t > prev))
            throw DomainError("InversionConfig: t_grid must be strictly increasing and positive");
        prev = t;
    }
}

std::vector<double> stehfest_weights(int n) {
    if (n % 2 != 0 || n < 4 || n > 20)
        throw DomainError("stehfest_weights: terms must be even and in [4, 20]");
    const int half = n / 2;
    std::vector<double> w(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        double sum = 0.0;
        const int j_lo = (k + 1) / 2;
        const int j_hi = std::min(k, half);
        for (int j = j_lo; j <= j_hi; ++j) {
            // j^{n/2} (2j)! / ((n/2-j)! j! (j-1)! (k-j)! (2j-k)!)
            const double lg = half * std::log(static_cast<double>(j)) +
                              std::lgamma(2.0 * j + 1.0) -
                              std::lgamma(half - j + 1.0) - std::lgamma(j + 1.0) -
                              std::lgamma(static_cast<double>(j)) -
                              std::lgamma(k - j + 1.0) - std::lgamma(2.0 * j - k + 1.0);
            sum += std::exp(lg);
        }
        w[k - 1] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return w;
}

double invert(const std::function<double(double)>& F, double t,
              const InversionConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw DomainError("invert: t must be positive");
    switch (cfg.method) {
        case InversionConfig::Method::GaverStehfest:
            return gaver_stehfest(F, t, cfg.terms);
        case InversionConfig::Method::GaverWynnRho:
            return gaver_wynn_rho(F, t, cfg.terms);
    }
    return 0;
}

} // namespace lpt
