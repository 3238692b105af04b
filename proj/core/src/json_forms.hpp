#pragma once

// Internal helpers shared by the JSON emitters. Not installed.

#include <json.hpp>

#include "eocos/montage.hpp"

namespace eocos::detail {

nlohmann::json to_json(const Effect& e);
nlohmann::json to_json(const ActionPoint& p);
nlohmann::json to_json(const IntensityDelta& d);

}  // namespace eocos::detail
