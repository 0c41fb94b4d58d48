#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ulm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitDiverged = 2;

struct CommandOptions {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out = ".";
    std::optional<std::string> alpha;  ///< comma-separated list
    std::optional<std::string> grid;   ///< "min:max:n,min:max:n"
    double c = -1.0;
    double d = -1.0;
    int points = 360;
    bool oracle = false;
    std::optional<std::uint64_t> seed;  ///< accepted and echoed; every computation is deterministic
};

/// Parse "a,b,c" into finite, nonzero reals. Throws ConfigError.
[[nodiscard]] std::vector<double> parse_alpha_list(const std::string& text);

struct GridSpec {
    double min0, max0;
    int n0;
    double min1, max1;
    int n1;
};

/// Parse "min:max:n,min:max:n". Throws ConfigError.
[[nodiscard]] GridSpec parse_grid(const std::string& text);

int cmd_simulate(const CommandOptions& opts, std::ostream& log);
int cmd_alpha_sweep(const CommandOptions& opts, std::ostream& log);
int cmd_pole_map(const CommandOptions& opts, std::ostream& log);
int cmd_cd_map(const CommandOptions& opts, std::ostream& log);
int cmd_boundary(const CommandOptions& opts, std::ostream& log);

}  // namespace ulm::cli
