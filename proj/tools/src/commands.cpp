#include "ulm_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "ulm_cli/config.hpp"
#include "ulm_cli/csv.hpp"

namespace ulm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

double parse_real(std::string_view text, const std::string& what) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError(fmt::format("{}: '{}' is not a finite number", what, text));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw ConfigError(fmt::format("{}: cannot open for writing", path.string()));
    }
    return os;
}

void write_json(const fs::path& path, const json& j) {
    auto os = open_output(path);
    os << j.dump(2) << '\n';
}

void write_manifest(const CommandOptions& opts, const std::string& subcommand, const json& config,
                    const std::vector<std::string>& outputs) {
    json manifest = {
        {"subcommand", subcommand},
        {"tool_version", ULM_VERSION},
        {"config", config},
        {"config_digest", config_digest(config)},
        {"outputs", outputs},
        {"seed", opts.seed ? json(*opts.seed) : json(nullptr)},
    };
    write_json(opts.out / "manifest.json", manifest);
}

RunConfig resolve_run_config(const CommandOptions& opts) {
    RunConfig cfg = opts.config ? load_run_config(*opts.config) : run_config_from_json(json::object());
    if (opts.oracle) {
        cfg.sim.log_oracle = true;
    }
    return cfg;
}

void prepare_out_dir(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        throw ConfigError(fmt::format("{}: cannot create output directory: {}", out.string(), ec.message()));
    }
}

json summary_json(const RunConfig& cfg, const SimTrace& trace, const ConvergenceSummary& metrics) {
    json out = {
        {"config", to_json(cfg)},
        {"steps", trace.size()},
        {"diverged_at", trace.diverged_at ? json(*trace.diverged_at) : json(nullptr)},
        {"final_tracking_error", metrics.final_tracking_error},
        {"final_estimation_error", metrics.final_estimation_error},
        {"classification", to_string(metrics.classification)},
        {"saturated_steps",
         std::count_if(trace.steps.begin(), trace.steps.end(), [](const SimStep& s) { return s.saturated; })},
    };
    if (trace.oracle_logged) {
        out["identity_residuals"] = {
            {"tracking_error", verify_error_identity(trace)},
            {"ulm_split", verify_ulm_split(trace)},
            {"observer_error", verify_observer_identity(trace)},
            {"input_extraction", verify_input_extraction(trace)},
        };
    }
    return out;
}

std::string alpha_tag(double alpha) { return fmt::format("{}", alpha); }

template <typename Fn>
int guarded(std::ostream& log, Fn&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
    } catch (const ulm::Error& e) {
        log << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        log << "error: " << e.what() << '\n';
    }
    return kExitConfigError;
}

}  // namespace

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    for (auto part : split(text, ',')) {
        const double alpha = parse_real(part, "--alpha");
        if (alpha == 0.0) {
            throw ConfigError("--alpha: alpha = 0 makes the designed influence matrix singular");
        }
        out.push_back(alpha);
    }
    return out;
}

GridSpec parse_grid(const std::string& text) {
    const auto axes = split(text, ',');
    if (axes.size() != 2) {
        throw ConfigError(fmt::format("--grid: expected 'min:max:n,min:max:n', got '{}'", text));
    }
    double bounds[2][2];
    int counts[2];
    for (int a = 0; a < 2; ++a) {
        const auto fields = split(axes[static_cast<std::size_t>(a)], ':');
        if (fields.size() != 3) {
            throw ConfigError(fmt::format("--grid: axis '{}' must be min:max:n", axes[static_cast<std::size_t>(a)]));
        }
        bounds[a][0] = parse_real(fields[0], "--grid");
        bounds[a][1] = parse_real(fields[1], "--grid");
        const double n = parse_real(fields[2], "--grid");
        if (n != std::floor(n) || n < 2 || n > 1e6) {
            throw ConfigError("--grid: node count must be an integer in [2, 1e6]");
        }
        counts[a] = static_cast<int>(n);
        if (!(bounds[a][0] < bounds[a][1])) {
            throw ConfigError(fmt::format("--grid: axis '{}' needs min < max", axes[static_cast<std::size_t>(a)]));
        }
    }
    return {bounds[0][0], bounds[0][1], counts[0], bounds[1][0], bounds[1][1], counts[1]};
}

int cmd_simulate(const CommandOptions& opts, std::ostream& log) {
    return guarded(log, [&] {
        RunConfig cfg = resolve_run_config(opts);
        if (opts.alpha) {
            const auto alphas = parse_alpha_list(*opts.alpha);
            if (alphas.size() != 1) {
                throw ConfigError("simulate: --alpha takes a single value (use alpha-sweep for lists)");
            }
            cfg.sim.design = ScaledTrueInfluence{alphas.front()};
        }
        prepare_out_dir(opts.out);

        const SimTrace trace = run_closed_loop(cfg.sim);
        const ConvergenceSummary metrics = convergence_metrics(trace, cfg.settle_window, cfg.tol);
        {
            auto os = open_output(opts.out / "trace.csv");
            write_trace_csv(os, trace, time_step(cfg.sim.plant));
        }
        write_json(opts.out / "summary.json", summary_json(cfg, trace, metrics));
        write_manifest(opts, "simulate", to_json(cfg), {"trace.csv", "summary.json"});

        log << fmt::format("simulate: {} steps, final |e_y| = {}, final |e_F| = {}, {}\n", trace.size(),
                           format_real(metrics.final_tracking_error), format_real(metrics.final_estimation_error),
                           to_string(metrics.classification));
        return metrics.classification == Classification::diverged ? kExitDiverged : kExitOk;
    });
}

int cmd_alpha_sweep(const CommandOptions& opts, std::ostream& log) {
    return guarded(log, [&] {
        if (!opts.alpha) {
            throw ConfigError("alpha-sweep: --alpha LIST is required");
        }
        std::vector<double> alphas;
        for (double a : parse_alpha_list(*opts.alpha)) {
            if (std::find(alphas.begin(), alphas.end(), a) != alphas.end()) {
                log << "warning: duplicate alpha " << alpha_tag(a) << " ignored\n";
                continue;
            }
            alphas.push_back(a);
        }
        const RunConfig cfg = resolve_run_config(opts);
        prepare_out_dir(opts.out);

        const auto entries = run_alpha_sweep(cfg.sim, alphas, cfg.settle_window, cfg.tol);
        std::vector<std::string> outputs;
        json rows = json::array();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            const std::string name = fmt::format("trace_{:02}_alpha_{}.csv", i, alpha_tag(e.alpha));
            auto os = open_output(opts.out / name);
            write_trace_csv(os, e.trace, time_step(cfg.sim.plant));
            outputs.push_back(name);
            rows.push_back({{"alpha", e.alpha},
                            {"trace", name},
                            {"final_tracking_error", e.summary.final_tracking_error},
                            {"final_estimation_error", e.summary.final_estimation_error},
                            {"classification", to_string(e.summary.classification)}});
            log << fmt::format("alpha = {}: {} (final |e_y| = {})\n", alpha_tag(e.alpha),
                               to_string(e.summary.classification), format_real(e.summary.final_tracking_error));
        }
        {
            auto os = open_output(opts.out / "sweep_summary.csv");
            write_sweep_csv(os, entries);
        }
        json config = to_json(cfg);
        config["alphas"] = alphas;
        write_json(opts.out / "summary.json", {{"config", config}, {"runs", rows}});
        outputs.insert(outputs.end(), {"sweep_summary.csv", "summary.json"});
        write_manifest(opts, "alpha-sweep", config, outputs);
        return kExitOk;
    });
}

int cmd_pole_map(const CommandOptions& opts, std::ostream& log) {
    return guarded(log, [&] {
        const GridSpec g = parse_grid(opts.grid.value_or("-2:4:121,-3:3:121"));
        const GainPair gains{opts.c, opts.d};
        prepare_out_dir(opts.out);
        const StabilityGrid grid =
            pole_map(AxisSpec{"re_alpha", g.min0, g.max0, g.n0}, AxisSpec{"im_alpha", g.min1, g.max1, g.n1}, gains);
        {
            auto os = open_output(opts.out / "pole_map.csv");
            write_grid_csv(os, grid);
        }
        const json config = {{"grid", {{"re", {g.min0, g.max0, g.n0}}, {"im", {g.min1, g.max1, g.n1}}}},
                             {"c", opts.c},
                             {"d", opts.d}};
        write_manifest(opts, "pole-map", config, {"pole_map.csv"});
        log << fmt::format("pole-map: {} nodes written\n", grid.values.size());
        return kExitOk;
    });
}

int cmd_cd_map(const CommandOptions& opts, std::ostream& log) {
    return guarded(log, [&] {
        const auto alphas = parse_alpha_list(opts.alpha.value_or("2"));
        if (alphas.size() != 1) {
            throw ConfigError("cd-map: --alpha takes a single value");
        }
        const GridSpec g = parse_grid(opts.grid.value_or("-1:1:101,-1:1:101"));
        prepare_out_dir(opts.out);
        const StabilityGrid grid =
            cd_map(Complex{alphas.front(), 0.0}, AxisSpec{"c", g.min0, g.max0, g.n0}, AxisSpec{"d", g.min1, g.max1, g.n1});
        {
            auto os = open_output(opts.out / "cd_map.csv");
            write_grid_csv(os, grid);
        }
        const json config = {{"alpha", alphas.front()},
                             {"grid", {{"c", {g.min0, g.max0, g.n0}}, {"d", {g.min1, g.max1, g.n1}}}}};
        write_manifest(opts, "cd-map", config, {"cd_map.csv"});
        log << fmt::format("cd-map: {} nodes written\n", grid.values.size());
        return kExitOk;
    });
}

int cmd_boundary(const CommandOptions& opts, std::ostream& log) {
    return guarded(log, [&] {
        if (opts.points < 2) {
            throw ConfigError("boundary: --points must be at least 2");
        }
        prepare_out_dir(opts.out);
        const auto points = boundary_contour(GainPair{opts.c, opts.d}, opts.points);
        {
            auto os = open_output(opts.out / "boundary.csv");
            write_boundary_csv(os, points);
        }
        const json config = {{"c", opts.c}, {"d", opts.d}, {"points", opts.points}};
        write_manifest(opts, "boundary", config, {"boundary.csv"});
        log << fmt::format("boundary: {} points written\n", points.size());
        return kExitOk;
    });
}

}  // namespace ulm::cli
