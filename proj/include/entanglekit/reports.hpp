#pragma once

// JSON and text renderings of the structured results.

#include <string>

#include <json.hpp>

#include "entanglekit/locc.hpp"
#include "entanglekit/measures.hpp"
#include "entanglekit/separability.hpp"

namespace entanglekit {

nlohmann::ordered_json to_json(const CriterionVerdict& v);
nlohmann::ordered_json to_json(const SeparabilityReport& r);
nlohmann::ordered_json to_json(const MeasureReport& r);
nlohmann::ordered_json to_json(const ConversionReport& r);

std::string to_text(const SeparabilityReport& r);
std::string to_text(const MeasureReport& r);
std::string to_text(const ConversionReport& r);

}  // namespace entanglekit
