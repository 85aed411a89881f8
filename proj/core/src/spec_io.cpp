#include "lpt/spec_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace lpt {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json endpoint_to_json(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double endpoint_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw DomainError("spec file: bad interval endpoint '" + s + "'");
    }
    if (!j.is_number()) throw DomainError("spec file: interval endpoint must be a number or \"inf\"");
    return j.get<double>();
}

} // namespace

std::string spec_to_json(const DiffusionSpec& spec) {
    json params;
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, BrownianDrift>) {
                params["nu"] = fam.nu;
            } else if constexpr (std::is_same_v<T, OrnsteinUhlenbeck>) {
                params["kappa"] = fam.kappa;
            } else if constexpr (std::is_same_v<T, GeometricBM>) {
                params["mu"] = fam.mu;
                params["sigma"] = fam.sigma;
            } else if constexpr (std::is_same_v<T, SwitchingBrownian>) {
                params["mu_above"] = fam.mu_above;
                params["mu_below"] = fam.mu_below;
            } else if constexpr (std::is_same_v<T, SwitchingGBM>) {
                params["mu_above"] = fam.mu_above;
                params["sigma_above"] = fam.sigma_above;
                params["mu_below"] = fam.mu_below;
                params["sigma_below"] = fam.sigma_below;
            } else {
                throw DomainError("spec file: generic diffusions are not serializable");
            }
        },
        spec.family());

    json j;
    j["family"] = spec.family_name();
    j["params"] = params;
    j["interval"] = json::array({endpoint_to_json(spec.interval().lower),
                                 endpoint_to_json(spec.interval().upper)});
    j["alpha"] = spec.alpha();
    return j.dump(2);
}

DiffusionSpec spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("spec file: parse error: ") + e.what());
    }
    try {
        const std::string family = j.at("family").get<std::string>();
        const json& p = j.at("params");
        const json& iv = j.at("interval");
        if (!iv.is_array() || iv.size() != 2)
            throw DomainError("spec file: interval must be [lower, upper]");
        const Interval interval{endpoint_from_json(iv[0]), endpoint_from_json(iv[1])};
        const double alpha = j.at("alpha").get<double>();

        if (family == "brownian_drift")
            return DiffusionSpec(BrownianDrift{p.at("nu").get<double>()}, interval, alpha);
        if (family == "ornstein_uhlenbeck")
            return DiffusionSpec(OrnsteinUhlenbeck{p.at("kappa").get<double>()}, interval,
                                 alpha);
        if (family == "geometric_bm")
            return DiffusionSpec(
                GeometricBM{p.at("mu").get<double>(), p.at("sigma").get<double>()},
                interval, alpha);
        if (family == "switching_brownian")
            return DiffusionSpec(SwitchingBrownian{p.at("mu_above").get<double>(),
                                                   p.at("mu_below").get<double>()},
                                 interval, alpha);
        if (family == "switching_gbm")
            return DiffusionSpec(
                SwitchingGBM{p.at("mu_above").get<double>(),
                             p.at("sigma_above").get<double>(),
                             p.at("mu_below").get<double>(),
                             p.at("sigma_below").get<double>()},
                interval, alpha);
        throw DomainError("spec file: unknown family '" + family + "'");
    } catch (const json::exception& e) {
        throw DomainError(std::string("spec file: ") + e.what());
    }
}

DiffusionSpec load_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("spec file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return spec_from_json(ss.str());
}

void save_spec_file(const DiffusionSpec& spec, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("spec file: cannot write '" + path + "'");
    os << spec_to_json(spec) << '\n';
}

} // namespace lpt
