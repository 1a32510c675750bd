#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "riskconv/distortion.hpp"
#include "riskconv/distribution.hpp"
#include "riskconv/riskshare.hpp"

namespace riskconv {

/// Curve literal: {"family":"power","alpha":1.2}, {"family":"dualpower","beta":0.3},
/// {"family":"pwl","points":[[0,0],[0.1935,0],[1,1]]}, {"family":"var","alpha":0.1},
/// {"family":"es","alpha":0.1}, {"family":"identity"}.
DistortionCurve parse_curve(const nlohmann::json& j);

/// A single literal or an array of them.
std::vector<DistortionCurve> parse_curves(const nlohmann::json& j);

/// Distribution literal: {"family":"uniform","a":0,"b":1},
/// {"family":"pareto","alpha":3,"theta":2}, {"family":"lognormal","mu":0,"sigma":1},
/// {"family":"discrete","atoms":[[0,0.5],[1,0.5]]}; add "negate":true for -X.
Distribution parse_distribution(const nlohmann::json& j);

nlohmann::json to_json(const ShareResult& r);

}  // namespace riskconv
