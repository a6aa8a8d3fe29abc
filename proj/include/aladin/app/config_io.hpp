#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aladin/coordinator.hpp"

namespace aladin::app {

/// Unknown key or ill-typed value in a configuration document or override.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dotted key names accepted by set_config_value, e.g. "mu0", "inner.tol".
const std::vector<std::string>& config_keys();

/// Assigns one field. Numbers, booleans and (for reference_solution) arrays.
void set_config_value(AladinConfig& cfg, std::string_view key,
                      const nlohmann::json& value);

/**
 * Applies a JSON object whose keys mirror the AladinConfig field names;
 * "inner" and "reg" are nested objects.
 */
void apply_config_json(AladinConfig& cfg, const nlohmann::json& doc);

void apply_config_file(AladinConfig& cfg, const std::string& path);

/// Applies "key=value"; value is parsed as JSON.
void apply_override(AladinConfig& cfg, std::string_view assignment);

nlohmann::json config_to_json(const AladinConfig& cfg);

}  // namespace aladin::app
