#include "levylab/levy_json.hpp"

#include <stdexcept>

namespace levylab {

using nlohmann::json;

LevySpec spec_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("spec: must be a JSON object");
    const bool has_a = j.contains("a");
    const bool has_mu = j.contains("mu");
    if (has_a == has_mu)
        throw std::invalid_argument("spec: give exactly one of \"a\" or \"mu\"");
    const double sigma2 = j.value("sigma2", 0.0);

    std::optional<ExpJumps> jumps;
    if (j.contains("jumps") && !j.at("jumps").is_null()) {
        const auto& jj = j.at("jumps");
        const std::string type = jj.value("type", "");
        if (type == "exp") {
            jumps = ExpJumps{jj.at("p").get<double>(), jj.at("q").get<double>()};
        } else if (type != "none") {
            throw std::invalid_argument("spec: jumps.type must be \"exp\" or \"none\"");
        }
    }
    if (has_a) return LevySpec::make(j.at("a").get<double>(), sigma2, jumps);
    return LevySpec::from_drift(j.at("mu").get<double>(), sigma2, jumps);
}

json spec_to_json(const LevySpec& spec) {
    json j;
    j["a"] = spec.a();
    j["sigma2"] = spec.sigma2();
    if (spec.jumps()) {
        j["jumps"] = {{"type", "exp"}, {"p", spec.jumps()->p}, {"q", spec.jumps()->q}};
    } else {
        j["jumps"] = {{"type", "none"}};
    }
    return j;
}

} // namespace levylab
