#include <iostream>

#include <CLI11.hpp>

#include "ulm_cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace ulm::cli;

    CLI::App app{"Ultra-local-model FTS control: closed-loop simulation and stability maps"};
    app.set_version_flag("--version", std::string(ULM_VERSION));
    app.require_subcommand(1);

    CommandOptions opts;
    std::string out = ".";
    std::string config;
    std::string alpha;
    std::string grid;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "Output directory")->capture_default_str();
        sub->add_option("--seed", seed, "Reserved; all computations are deterministic");
    };

    auto* simulate = app.add_subcommand("simulate", "Run one closed-loop simulation");
    simulate->add_option("--config", config, "JSON run configuration (defaults when omitted)");
    simulate->add_option("--alpha", alpha, "Override the design scale alpha (G_design = alpha G)");
    simulate->add_flag("--oracle", opts.oracle, "Log ground-truth dynamics and identity residuals");
    add_common(simulate);

    auto* sweep = app.add_subcommand("alpha-sweep", "Closed-loop runs over a list of alpha values");
    sweep->add_option("--config", config, "JSON run configuration (defaults when omitted)");
    sweep->add_option("--alpha", alpha, "Comma-separated alpha list")->required();
    sweep->add_flag("--oracle", opts.oracle, "Log ground-truth dynamics");
    add_common(sweep);

    auto* pole = app.add_subcommand("pole-map", "Max root norm over complex alpha");
    pole->add_option("--grid", grid, "reMin:reMax:n,imMin:imMax:n");
    pole->add_option("--c", opts.c, "Controller gain value c")->capture_default_str();
    pole->add_option("--d", opts.d, "Observer gain value d")->capture_default_str();
    add_common(pole);

    auto* cd = app.add_subcommand("cd-map", "Max root norm over (c, d) at fixed alpha");
    cd->add_option("--alpha", alpha, "Real alpha (default 2)");
    cd->add_option("--grid", grid, "cMin:cMax:n,dMin:dMax:n");
    add_common(cd);

    auto* boundary = app.add_subcommand("boundary", "Unit-modulus contour alpha(theta)");
    boundary->add_option("--c", opts.c, "Controller gain value c")->capture_default_str();
    boundary->add_option("--d", opts.d, "Observer gain value d")->capture_default_str();
    boundary->add_option("--points", opts.points, "Number of theta segments over (0, 2 pi)")->capture_default_str();
    add_common(boundary);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    opts.out = out;
    if (!config.empty()) {
        opts.config = config;
    }
    if (!alpha.empty()) {
        opts.alpha = alpha;
    }
    if (!grid.empty()) {
        opts.grid = grid;
    }
    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--seed") > 0) {
            opts.seed = seed;
        }
    }

    if (simulate->parsed()) {
        return cmd_simulate(opts, std::cerr);
    }
    if (sweep->parsed()) {
        return cmd_alpha_sweep(opts, std::cerr);
    }
    if (pole->parsed()) {
        return cmd_pole_map(opts, std::cerr);
    }
    if (cd->parsed()) {
        return cmd_cd_map(opts, std::cerr);
    }
    return cmd_boundary(opts, std::cerr);
}
