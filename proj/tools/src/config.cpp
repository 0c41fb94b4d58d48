#include "ulm_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace ulm::cli {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
    }
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out.push_back(m(r, c));
        }
    }
    return out;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", where));
    }
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) {
            throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
        }
    }
}

double get_real(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
    }
    return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(fmt::format("{}.{}: expected an integer", where, key));
    }
    return v.get<int>();
}

Vector get_vector(const json& v, const std::string& where) {
    if (!v.is_array()) {
        throw ConfigError(fmt::format("{}: expected an array of numbers", where));
    }
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw ConfigError(fmt::format("{}[{}]: expected a number", where, i));
        }
        out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
}

Matrix get_square_matrix(const json& v, const std::string& where) {
    const Vector flat = get_vector(v, where);
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (n == 0 || n * n != flat.size()) {
        throw ConfigError(fmt::format("{}: expected a non-empty row-major square matrix, got {} entries", where,
                                      flat.size()));
    }
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = flat[r * n + c];
        }
    }
    return m;
}

GainParams get_gains(const json& obj, const char* exp_key, const char* scale_key, const std::string& where) {
    check_keys(obj, where, {exp_key, scale_key});
    try {
        return GainParams{get_real(obj, exp_key, where), get_real(obj, scale_key, where)};
    } catch (const ParameterDomainError& e) {
        throw ConfigError(fmt::format("{}: {}", where, e.what()));
    }
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

json default_config_json() {
    return to_json(RunConfig{default_sim_config(), 50, 1e-3});
}

json to_json(const RunConfig& cfg) {
    const SimConfig& s = cfg.sim;
    json plant;
    if (const auto* rb = std::get_if<RigidBodyPlant>(&s.plant)) {
        plant = {{"type", "rigid_body"},
                 {"mass", rb->params.mass},
                 {"inertia", rb->params.inertia},
                 {"dt", rb->params.dt}};
    } else {
        const auto& lin = std::get<LinearPlant>(s.plant);
        plant = {{"type", "linear"}, {"g", matrix_json(lin.G)}, {"dt", lin.dt}};
    }

    json controller;
    if (const auto* scaled = std::get_if<ScaledTrueInfluence>(&s.design)) {
        controller = {{"alpha", scaled->alpha}};
    } else {
        controller = {{"g_design", matrix_json(std::get<FixedInfluence>(s.design).g)}};
    }

    json steps = json::array();
    for (const auto& channel : s.reference.channels) {
        json ch = json::array();
        for (const auto& st : channel) {
            ch.push_back({{"time", st.time}, {"amplitude", st.amplitude}});
        }
        steps.push_back(ch);
    }

    json initial = {{"y0", vector_json(s.initial.y_prev)}, {"y1", vector_json(s.initial.y_curr)}};
    initial["f_hat0"] = s.f_hat0.size() ? vector_json(s.f_hat0) : vector_json(Vector::Zero(s.initial.y_prev.size()));

    return json{
        {"plant", plant},
        {"controller", controller},
        {"gains",
         {{"observer", {{"r", s.observer_gains.exponent()}, {"gamma", s.observer_gains.scale()}}},
          {"controller", {{"s", s.controller_gains.exponent()}, {"mu", s.controller_gains.scale()}}}}},
        {"sim",
         {{"horizon", s.horizon},
          {"u_max", s.u_max ? json(*s.u_max) : json(nullptr)},
          {"settle_window", cfg.settle_window},
          {"tol", cfg.tol},
          {"divergence_limit", s.divergence_limit},
          {"oracle", s.log_oracle}}},
        {"initial", initial},
        {"reference", {{"steps", steps}}},
    };
}

RunConfig run_config_from_json(const json& user) {
    if (!user.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    check_keys(user, "config", {"plant", "controller", "gains", "sim", "initial", "reference"});

    json merged = default_config_json();
    // A user-supplied design replaces the default one instead of merging with it.
    if (user.contains("controller")) {
        merged.erase("controller");
    }
    if (user.contains("plant") && user["plant"].is_object() && user["plant"].value("type", "rigid_body") == "linear") {
        merged.erase("plant");
    }
    merged.merge_patch(user);
    // merge_patch treats null as deletion; null u_max means "no saturation".
    if (user.contains("sim") && user["sim"].is_object() && user["sim"].contains("u_max") &&
        user["sim"]["u_max"].is_null()) {
        merged["sim"]["u_max"] = nullptr;
    }

    RunConfig cfg;
    SimConfig& s = cfg.sim;
    try {
        const json& plant = merged.at("plant");
        const std::string type = plant.value("type", "rigid_body");
        if (type == "rigid_body") {
            check_keys(plant, "plant", {"type", "mass", "inertia", "dt"});
            RigidBodyParams p{get_real(plant, "mass", "plant"), get_real(plant, "inertia", "plant"),
                              get_real(plant, "dt", "plant")};
            s.plant = RigidBodyPlant{p};
        } else if (type == "linear") {
            check_keys(plant, "plant", {"type", "g", "dt"});
            s.plant = LinearPlant{get_square_matrix(plant.at("g"), "plant.g"),
                                  plant.contains("dt") ? get_real(plant, "dt", "plant") : 0.05};
        } else {
            throw ConfigError(fmt::format("plant.type: unknown plant '{}' (expected rigid_body or linear)", type));
        }

        const json& ctrl = merged.at("controller");
        check_keys(ctrl, "controller", {"alpha", "g_design"});
        if (ctrl.contains("alpha") == ctrl.contains("g_design")) {
            throw ConfigError("controller: give exactly one of 'alpha' or 'g_design'");
        }
        if (ctrl.contains("alpha")) {
            s.design = ScaledTrueInfluence{get_real(ctrl, "alpha", "controller")};
        } else {
            s.design = FixedInfluence{get_square_matrix(ctrl.at("g_design"), "controller.g_design")};
        }

        const json& gains = merged.at("gains");
        check_keys(gains, "gains", {"observer", "controller"});
        s.observer_gains = get_gains(gains.at("observer"), "r", "gamma", "gains.observer");
        s.controller_gains = get_gains(gains.at("controller"), "s", "mu", "gains.controller");

        const json& sim = merged.at("sim");
        check_keys(sim, "sim", {"horizon", "u_max", "settle_window", "tol", "divergence_limit", "oracle"});
        s.horizon = get_int(sim, "horizon", "sim");
        if (sim.at("u_max").is_null()) {
            s.u_max.reset();
        } else {
            s.u_max = get_real(sim, "u_max", "sim");
        }
        cfg.settle_window = get_int(sim, "settle_window", "sim");
        cfg.tol = get_real(sim, "tol", "sim");
        s.divergence_limit = get_real(sim, "divergence_limit", "sim");
        if (!sim.at("oracle").is_boolean()) {
            throw ConfigError("sim.oracle: expected a boolean");
        }
        s.log_oracle = sim.at("oracle").get<bool>();

        const json& initial = merged.at("initial");
        check_keys(initial, "initial", {"y0", "y1", "f_hat0"});
        s.initial = PlantState{get_vector(initial.at("y0"), "initial.y0"), get_vector(initial.at("y1"), "initial.y1")};
        s.f_hat0 = get_vector(initial.at("f_hat0"), "initial.f_hat0");
        if (s.f_hat0.size() != s.initial.y_prev.size()) {
            // Defaults are sized for the rigid body; other plants get a zero estimate of their own size.
            if (!user.contains("initial") || !user["initial"].contains("f_hat0")) {
                s.f_hat0 = Vector::Zero(s.initial.y_prev.size());
            }
        }

        const json& ref = merged.at("reference");
        check_keys(ref, "reference", {"steps"});
        const json& steps = ref.at("steps");
        if (!steps.is_array()) {
            throw ConfigError("reference.steps: expected one array of steps per channel");
        }
        s.reference.channels.clear();
        for (std::size_t ch = 0; ch < steps.size(); ++ch) {
            const std::string where = fmt::format("reference.steps[{}]", ch);
            if (!steps[ch].is_array()) {
                throw ConfigError(where + ": expected an array of {time, amplitude}");
            }
            std::vector<ReferenceStep> channel;
            for (std::size_t i = 0; i < steps[ch].size(); ++i) {
                const std::string w = fmt::format("{}[{}]", where, i);
                check_keys(steps[ch][i], w, {"time", "amplitude"});
                channel.push_back({get_real(steps[ch][i], "time", w), get_real(steps[ch][i], "amplitude", w)});
            }
            s.reference.channels.push_back(std::move(channel));
        }
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("config: {}", e.what()));
    }

    if (cfg.settle_window < 1 || cfg.settle_window > s.horizon) {
        throw ConfigError("sim.settle_window: must lie in [1, horizon]");
    }
    if (!(cfg.tol > 0.0)) {
        throw ConfigError("sim.tol: must be positive");
    }
    try {
        s.validate();
    } catch (const ulm::Error& e) {
        throw ConfigError(fmt::format("config: {}", e.what()));
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte);
        throw ConfigError(fmt::format("{}:{}:{}: {}", path.string(), line, column, e.what()));
    }
    try {
        return run_config_from_json(parsed);
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::string config_digest(const json& config) {
    const std::string canonical = config.dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", hash);
}

}  // namespace ulm::cli
