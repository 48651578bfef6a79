#pragma once

#include <string>

#include <json.hpp>

namespace ddd::io::detail {

/// Serialises like json::dump(2) but writes every float with 17 significant
/// digits instead of the shortest round-trip form.
std::string dump_json(const nlohmann::json& value);

}  // namespace ddd::io::detail
