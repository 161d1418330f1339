#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "standby/economics.hpp"

namespace standby {

struct ModelConfig {
    SystemModel model;
    EconomicParams economics;
};

// Throws Error(ConfigInvalid) naming the offending field, e.g. "unit.T row 3".
ModelConfig parse_config(const nlohmann::json& doc);
ModelConfig parse_config_text(const std::string& text);
// Missing or unreadable file: Error(Io).
ModelConfig load_config(const std::filesystem::path& path);

}  // namespace standby
