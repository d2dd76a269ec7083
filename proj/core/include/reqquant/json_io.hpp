#pragma once

// Canonical JSON forms. A quantification is an array of [x, y] pairs, e.g.
// [[900,0],[1000,1]].

#include <nlohmann/json.hpp>

#include "reqquant/metrics.hpp"
#include "reqquant/quantification.hpp"
#include "reqquant/reasoner.hpp"

namespace reqquant {

using Json = nlohmann::json;

Json to_json(const Quantification& q);
// Throws Error(Parse) on shape errors; invariant violations propagate as thrown by Quantification.
Quantification quantification_from_json(const Json& j);

Json to_json(const Operation& op);
Operation operation_from_json(const Json& j);

Json to_json(const Matching& m);
Json to_json(const MetricReport& r);

Json to_json(const RequirementExample& ex);
RequirementExample example_from_json(const Json& j);

}  // namespace reqquant
