#include "riskconv/json_io.hpp"

#include <stdexcept>

namespace riskconv {

using nlohmann::json;

DistortionCurve parse_curve(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("curve literal: expected an object with a \"family\" key");
    const std::string family = j.at("family").get<std::string>();
    if (family == "power") return DistortionCurve::power(j.at("alpha").get<double>());
    if (family == "dualpower") return DistortionCurve::dual_power(j.at("beta").get<double>());
    if (family == "identity") return DistortionCurve::identity();
    if (family == "var") return DistortionCurve::var_indicator(j.at("alpha").get<double>());
    if (family == "es") return DistortionCurve::es_cap(j.at("alpha").get<double>());
    if (family == "pwl") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("pwl curve: points must be [t, h] pairs");
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return DistortionCurve::piecewise_linear(std::move(pts));
    }
    if (family == "sampled") {
        std::vector<double> vals = j.at("values").get<std::vector<double>>();
        return DistortionCurve::sampled(GridFunction(std::move(vals)));
    }
    throw std::invalid_argument("curve literal: unknown family \"" + family + "\"");
}

std::vector<DistortionCurve> parse_curves(const json& j) {
    std::vector<DistortionCurve> out;
    if (j.is_array()) {
        for (const auto& item : j) out.push_back(parse_curve(item));
    } else {
        out.push_back(parse_curve(j));
    }
    if (out.empty()) throw std::invalid_argument("curve list: empty");
    return out;
}

Distribution parse_distribution(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw std::invalid_argument("distribution literal: expected an object with \"family\"");
    const std::string family = j.at("family").get<std::string>();
    Distribution d = Distribution::uniform(0.0, 1.0);
    if (family == "uniform") {
        d = Distribution::uniform(j.at("a").get<double>(), j.at("b").get<double>());
    } else if (family == "pareto") {
        d = Distribution::pareto(j.at("alpha").get<double>(), j.at("theta").get<double>());
    } else if (family == "lognormal") {
        d = Distribution::lognormal(j.at("mu").get<double>(), j.at("sigma").get<double>());
    } else if (family == "discrete") {
        std::vector<std::pair<double, double>> atoms;
        for (const auto& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 2)
                throw std::invalid_argument("discrete law: atoms must be [value, prob] pairs");
            atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
        }
        d = Distribution::discrete(std::move(atoms));
    } else {
        throw std::invalid_argument("distribution literal: unknown family \"" + family + "\"");
    }
    if (j.value("negate", false)) d = negate(d);
    return d;
}

json to_json(const ShareResult& r) {
    json out;
    out["value"] = r.value;
    switch (r.regime) {
        case ShareRegime::all_concave_with_min: out["regime"] = "all_concave_with_min"; break;
        case ShareRegime::all_convex: out["regime"] = "all_convex"; break;
        case ShareRegime::var_family: out["regime"] = "var_family"; break;
        case ShareRegime::es_family: out["regime"] = "es_family"; break;
        case ShareRegime::generic_bound: out["regime"] = "generic_bound"; break;
    }
    if (r.lower_bound) out["lower_bound"] = *r.lower_bound;
    if (r.upper_bound) out["upper_bound"] = *r.upper_bound;
    if (r.allocation) {
        if (const auto* s = std::get_if<SingleAgent>(&*r.allocation)) {
            out["allocation"] = {{"type", "single_agent"}, {"agent", s->index}};
        } else if (const auto* c = std::get_if<Composition>(&*r.allocation)) {
            out["allocation"] = {{"type", "composition"}, {"probs", c->probs}};
        } else if (const auto* ja = std::get_if<JackpotAllocation>(&*r.allocation)) {
            json fns = json::array();
            for (const auto& f : ja->weight_fns) {
                // Report the distribution of the winner at full budget.
                fns.push_back(f(1.0));
            }
            out["allocation"] = {{"type", "jackpot"}, {"top_level_weights", fns}};
        }
    }
    return out;
}

}  // namespace riskconv
