#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ulm/fts_gains.hpp"
#include "ulm/plants.hpp"
#include "ulm/types.hpp"

namespace ulm {

/// Reference level change: from `time` [s] onward the channel holds `amplitude`.
struct ReferenceStep {
    double time = 0.0;
    double amplitude = 0.0;
};

/// Per-channel piecewise-constant reference; a channel with no steps is identically 0.
struct ReferenceSpec {
    std::vector<std::vector<ReferenceStep>> channels;

    void validate() const;
};

/// Reference value at t = k * dt (right-continuous at step times).
[[nodiscard]] Vector step_reference(int k, double dt, const ReferenceSpec& spec);

/// Designed influence matrix G_design = alpha * G_k (the benchmark's family of designs).
struct ScaledTrueInfluence {
    double alpha = 1.0;
};
/// A fixed designed influence matrix.
struct FixedInfluence {
    Matrix g;
};
using InfluenceDesign = std::variant<ScaledTrueInfluence, FixedInfluence>;

struct SimConfig {
    Plant plant = RigidBodyPlant{};
    InfluenceDesign design = ScaledTrueInfluence{1.0};
    GainParams observer_gains = default_gain_params();
    GainParams controller_gains = default_gain_params();
    std::optional<double> u_max = 3.0;
    int horizon = 400;
    ReferenceSpec reference;
    PlantState initial;
    Vector f_hat0;                    ///< empty -> zero vector
    bool log_oracle = false;          ///< record true (F_k, G_k); the controller never reads them
    double divergence_limit = 1e9;    ///< |entry| above this truncates the run

    void validate() const;
};

/// Rigid body (m = 2, I = 3, dt = 0.05), alpha = 1, u_max = 3, 400 steps,
/// y0 = y1 = (0.5, -0.5, 0.3), reference stepping to (1.5, 1.0, 0) at t = 0.
[[nodiscard]] SimConfig default_sim_config();

/// Time step of the plant's discretization.
[[nodiscard]] double time_step(const Plant& plant);

struct SimStep {
    int k = 0;
    Vector y;                  ///< y_k
    Vector y_ref;              ///< y^d_k
    Vector y_ref_future;       ///< y^d_{k+v}
    Vector tracking_error;     ///< e^y_k = y_k - y^d_k
    Vector tracking_error_lead;///< e^y_{k+v-1}, fed to the control law
    Vector u_commanded;
    Vector u_applied;
    bool saturated = false;
    Vector f_hat;              ///< estimate used by the controller at step k
    Vector f_measured;         ///< F_k = y_{k+v} - G_design u_applied
    Vector estimation_error;   ///< e^F_k = f_hat - f_measured
    Matrix g_design;
    std::optional<TrueDynamics> truth;  ///< only with log_oracle
    std::optional<Vector> perturbation; ///< R_k, only with log_oracle and k + 1 < length
};

struct SimTrace {
    std::vector<SimStep> steps;
    GainParams observer_gains = default_gain_params();
    GainParams controller_gains = default_gain_params();
    int order = 2;
    int horizon = 0;
    bool oracle_logged = false;
    std::optional<int> diverged_at;  ///< step at which the state left the finite/bounded region

    [[nodiscard]] bool diverged() const { return diverged_at.has_value(); }
    [[nodiscard]] std::size_t size() const { return steps.size(); }
};

/**
 * Closed loop of plant, observer and controller.
 *
 * Each step k: read (y_k, y_{k+1}); form e^y_{k+1}; compute u_k from the current
 * estimate; saturate; step the plant to obtain y_{k+2}; measure F_k with the applied
 * input and update the observer, which provides the estimate for step k+1.
 * Divergence truncates the trace instead of throwing.
 */
[[nodiscard]] SimTrace run_closed_loop(const SimConfig& cfg);

/// Max |e^y_{k+v} + e^F_k - C(e^y_{k+v-1}) e^y_{k+v-1}| over unsaturated steps.
[[nodiscard]] double verify_error_identity(const SimTrace& trace);

/// Max |F_k(measured) - (F_k + (G_k - G_design_k) u_k)|.
[[nodiscard]] double verify_ulm_split(const SimTrace& trace);

/// Max |e^F_{k+1} - (D(e^F_k) e^F_k - dF_k + dG_k u_k - dG_{k+1} u_{k+1})|.
[[nodiscard]] double verify_observer_identity(const SimTrace& trace);

/// Max |u_k - G_k^-1 delta_k| over unsaturated steps, with
/// delta_k = y^d_{k+v} - e^F_k - F_k + C(e^y_{k+v-1}) e^y_{k+v-1}.
[[nodiscard]] double verify_input_extraction(const SimTrace& trace);

enum class Classification { converged, bounded, diverged };

[[nodiscard]] std::string to_string(Classification c);

struct ConvergenceSummary {
    double final_tracking_error = 0.0;    ///< max infinity-norm of e^y over the window
    double final_estimation_error = 0.0;  ///< max infinity-norm of e^F over the window
    Classification classification = Classification::bounded;
};

/// Classify the final `settle_window` steps: converged when the tracking error stays below tol.
[[nodiscard]] ConvergenceSummary convergence_metrics(const SimTrace& trace, int settle_window, double tol);

struct SweepEntry {
    double alpha = 1.0;
    SimTrace trace;
    ConvergenceSummary summary;
};

/// Independent closed-loop runs with G_design = alpha G_k, in input order.
[[nodiscard]] std::vector<SweepEntry> run_alpha_sweep(const SimConfig& base, std::span<const double> alphas,
                                                      int settle_window, double tol);

}  // namespace ulm
