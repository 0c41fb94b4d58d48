#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ulm/sim.hpp"

namespace ulm::cli {

/// Malformed or invalid run configuration (maps to exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulation configuration plus the settling criteria used to classify the run.
struct RunConfig {
    SimConfig sim;
    int settle_window = 50;
    double tol = 1e-3;
};

/// Every key with its default value materialized.
[[nodiscard]] nlohmann::json default_config_json();

/// Overlay `user` on the defaults and validate; unknown keys are rejected.
[[nodiscard]] RunConfig run_config_from_json(const nlohmann::json& user);

/// Parse a JSON config file. Syntax errors are reported as "path:line:column: message".
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);

/// Fully resolved JSON form of a run config (round-trips through run_config_from_json).
[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);

/// FNV-1a 64 of the canonical (key-sorted, compact) serialization, as 16 hex digits.
[[nodiscard]] std::string config_digest(const nlohmann::json& config);

}  // namespace ulm::cli
