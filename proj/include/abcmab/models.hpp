#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcmab/network.hpp"

namespace abcmab {

/// Names accepted by builtin_model.
std::vector<std::string> builtin_model_names();

/// vilar_oscillator | birth_death | dimerization | lotka_volterra.
/// Throws LookupError for anything else.
ReactionNetwork builtin_model(std::string_view name);

/// Model-definition documents (JSON, one network per document).
nlohmann::json network_to_json(const ReactionNetwork& network);
ReactionNetwork network_from_json(const nlohmann::json& doc);
ReactionNetwork load_network(const std::string& path);

}  // namespace abcmab
