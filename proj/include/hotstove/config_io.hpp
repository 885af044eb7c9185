#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hotstove/engine.hpp"

namespace hotstove {

// Config file rejected; path names the offending field ("policy.high").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field_path, const std::string& message)
        : std::runtime_error(field_path.empty() ? message : field_path + ": " + message),
          path(std::move(field_path)) {}

    std::string path;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& root, const std::string& fallback_id);

// Reads, parses, and validates a config file; the file stem is the fallback id.
ExperimentConfig load_experiment_config(const std::string& file_path);

nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

// Every output embeds one of these so results are self-describing.
struct RunManifest {
    nlohmann::json config_echo;
    std::string version;
    std::string backend;  // engine | oracle | analytic
    std::uint64_t seed = 0;
    double duration_seconds = 0.0;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
std::string manifest_csv_comment(const RunManifest& manifest);  // "# key: value" lines

// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace hotstove
