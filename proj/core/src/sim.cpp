#include "ulm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ulm/controller.hpp"
#include "ulm/observer.hpp"
#include "ulm/stability.hpp"

namespace ulm {

void ReferenceSpec::validate() const {
    for (std::size_t ch = 0; ch < channels.size(); ++ch) {
        const auto& steps = channels[ch];
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (!(steps[i].time >= 0.0) || !std::isfinite(steps[i].amplitude)) {
                throw ParameterDomainError("reference channel " + std::to_string(ch) +
                                           ": step times must be nonnegative and amplitudes finite");
            }
            if (i > 0 && steps[i].time < steps[i - 1].time) {
                throw ParameterDomainError("reference channel " + std::to_string(ch) + ": step times must be sorted");
            }
        }
    }
}

Vector step_reference(int k, double dt, const ReferenceSpec& spec) {
    const double t = k * dt;
    // Slack of a fraction of a step keeps k*dt == step_time robust to rounding.
    const double slack = 1e-9 * dt;
    Vector out = Vector::Zero(static_cast<Eigen::Index>(spec.channels.size()));
    for (std::size_t ch = 0; ch < spec.channels.size(); ++ch) {
        for (const auto& s : spec.channels[ch]) {
            if (t + slack >= s.time) {
                out[static_cast<Eigen::Index>(ch)] = s.amplitude;
            } else {
                break;
            }
        }
    }
    return out;
}

double time_step(const Plant& plant) {
    if (const auto* rb = std::get_if<RigidBodyPlant>(&plant)) {
        return rb->params.dt;
    }
    return std::get<LinearPlant>(plant).dt;
}

SimConfig default_sim_config() {
    SimConfig cfg;
    Vector y0(3);
    y0 << 0.5, -0.5, 0.3;
    cfg.initial = PlantState{y0, y0};
    cfg.reference.channels = {{{0.0, 1.5}}, {{0.0, 1.0}}, {{0.0, 0.0}}};
    return cfg;
}

void SimConfig::validate() const {
    ulm::validate(plant);
    const PlantSignature sig = signature(plant);
    if (sig.order != 2) {
        throw ParameterDomainError("closed-loop harness supports plants of order 2 only");
    }
    if (!(time_step(plant) > 0.0)) {
        throw ParameterDomainError("time step must be positive");
    }
    if (horizon < sig.order + 2) {
        throw ParameterDomainError("horizon must be at least v + 2 = " + std::to_string(sig.order + 2));
    }
    if (u_max && !(*u_max > 0.0)) {
        throw ParameterDomainError("u_max must be positive");
    }
    if (!(divergence_limit > 0.0)) {
        throw ParameterDomainError("divergence limit must be positive");
    }
    if (const auto* scaled = std::get_if<ScaledTrueInfluence>(&design)) {
        if (scaled->alpha == 0.0 || !std::isfinite(scaled->alpha)) {
            throw ParameterDomainError("alpha must be finite and nonzero");
        }
    } else {
        const Matrix& g = std::get<FixedInfluence>(design).g;
        if (g.rows() != sig.output_dim || g.cols() != sig.input_dim) {
            throw DimensionMismatchError("designed influence matrix must be " + std::to_string(sig.output_dim) + "x" +
                                         std::to_string(sig.input_dim));
        }
        ControllerConfig{g, controller_gains, u_max}.validate();
    }
    if (initial.y_prev.size() != sig.output_dim || initial.y_curr.size() != sig.output_dim) {
        throw DimensionMismatchError("initial outputs must have dimension " + std::to_string(sig.output_dim));
    }
    if (!initial.y_prev.allFinite() || !initial.y_curr.allFinite()) {
        throw ParameterDomainError("initial outputs must be finite");
    }
    if (f_hat0.size() != 0 && f_hat0.size() != sig.output_dim) {
        throw DimensionMismatchError("initial estimate must have dimension " + std::to_string(sig.output_dim));
    }
    if (static_cast<Eigen::Index>(reference.channels.size()) != sig.output_dim) {
        throw DimensionMismatchError("reference must have one channel per output (" +
                                     std::to_string(sig.output_dim) + ")");
    }
    reference.validate();
}

namespace {

Matrix designed_influence(const InfluenceDesign& design, const Matrix& g_true) {
    if (const auto* scaled = std::get_if<ScaledTrueInfluence>(&design)) {
        return scaled->alpha * g_true;
    }
    return std::get<FixedInfluence>(design).g;
}

bool within(const Vector& v, double limit) { return v.allFinite() && v.cwiseAbs().maxCoeff() <= limit; }

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_oracle(const SimTrace& trace, const char* what) {
    if (!trace.oracle_logged) {
        throw MissingDataError(std::string(what) + " needs a trace recorded with ground-truth logging");
    }
}

void fill_perturbations(SimTrace& trace) {
    for (std::size_t k = 0; k + 1 < trace.steps.size(); ++k) {
        SimStep& now = trace.steps[k];
        const SimStep& next = trace.steps[k + 1];
        const Matrix H = now.g_design * now.truth->G.inverse();
        now.perturbation = perturbation_R(now.f_measured, next.f_measured, now.y_ref_future, next.y_ref_future,
                                          next.truth->F - now.truth->F, H);
    }
}

}  // namespace

SimTrace run_closed_loop(const SimConfig& cfg) {
    cfg.validate();
    const PlantSignature sig = signature(cfg.plant);
    const int v = sig.order;
    const double dt = time_step(cfg.plant);

    SimTrace trace;
    trace.observer_gains = cfg.observer_gains;
    trace.controller_gains = cfg.controller_gains;
    trace.order = v;
    trace.horizon = cfg.horizon;
    trace.oracle_logged = cfg.log_oracle;
    trace.steps.reserve(static_cast<std::size_t>(cfg.horizon));

    PlantState state = cfg.initial;
    ObserverState observer{cfg.f_hat0.size() ? cfg.f_hat0 : Vector::Zero(sig.output_dim), cfg.observer_gains};

    for (int k = 0; k < cfg.horizon; ++k) {
        SimStep s;
        s.k = k;
        s.y = state.y_prev;
        s.y_ref = step_reference(k, dt, cfg.reference);
        s.y_ref_future = step_reference(k + v, dt, cfg.reference);
        s.tracking_error = s.y - s.y_ref;
        s.tracking_error_lead = state.y_curr - step_reference(k + v - 1, dt, cfg.reference);

        const TrueDynamics truth = dynamics(cfg.plant, state);
        s.g_design = designed_influence(cfg.design, truth.G);

        const ControllerConfig ctrl{s.g_design, cfg.controller_gains, cfg.u_max};
        s.u_commanded = control_law(ctrl, s.y_ref_future, observer.f_hat, s.tracking_error_lead);
        if (cfg.u_max) {
            auto sat = saturate(s.u_commanded, *cfg.u_max);
            s.u_applied = std::move(sat.u);
            s.saturated = sat.clamped;
        } else {
            s.u_applied = s.u_commanded;
        }

        const PlantState next = step(cfg.plant, state, s.u_applied);
        if (!within(s.u_commanded, std::numeric_limits<double>::max()) ||
            !within(next.y_curr, cfg.divergence_limit)) {
            trace.diverged_at = k;
            break;
        }

        s.f_hat = observer.f_hat;
        s.f_measured = measure_ulm_dynamics(next.y_curr, s.g_design, s.u_applied);
        s.estimation_error = estimation_error(observer, s.f_measured);
        if (cfg.log_oracle) {
            s.truth = truth;
        }
        observer = observer_update(observer, s.f_measured);
        trace.steps.push_back(std::move(s));
        state = next;
    }

    if (cfg.log_oracle) {
        fill_perturbations(trace);
    }
    return trace;
}

double verify_error_identity(const SimTrace& trace) {
    const auto v = static_cast<std::size_t>(trace.order);
    double worst = 0.0;
    for (std::size_t k = 0; k + v < trace.steps.size(); ++k) {
        const SimStep& s = trace.steps[k];
        if (s.saturated) {
            continue;
        }
        const Vector& lead = trace.steps[k + v - 1].tracking_error;
        const Vector residual = trace.steps[k + v].tracking_error + s.estimation_error -
                                holder_gain(lead, trace.controller_gains) * lead;
        worst = std::max(worst, inf_norm(residual));
    }
    return worst;
}

double verify_ulm_split(const SimTrace& trace) {
    require_oracle(trace, "verify_ulm_split");
    double worst = 0.0;
    for (const SimStep& s : trace.steps) {
        const Vector predicted = s.truth->F + (s.truth->G - s.g_design) * s.u_applied;
        worst = std::max(worst, inf_norm(s.f_measured - predicted));
    }
    return worst;
}

double verify_observer_identity(const SimTrace& trace) {
    require_oracle(trace, "verify_observer_identity");
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < trace.steps.size(); ++k) {
        const SimStep& now = trace.steps[k];
        const SimStep& next = trace.steps[k + 1];
        const Vector& e = now.estimation_error;
        const Vector predicted = holder_gain(e, trace.observer_gains) * e - (next.truth->F - now.truth->F) +
                                 (now.truth->G - now.g_design) * now.u_applied -
                                 (next.truth->G - next.g_design) * next.u_applied;
        worst = std::max(worst, inf_norm(next.estimation_error - predicted));
    }
    return worst;
}

double verify_input_extraction(const SimTrace& trace) {
    require_oracle(trace, "verify_input_extraction");
    double worst = 0.0;
    for (const SimStep& s : trace.steps) {
        if (s.saturated) {
            continue;
        }
        const Vector& lead = s.tracking_error_lead;
        const Vector delta = s.y_ref_future - s.estimation_error - s.truth->F +
                             holder_gain(lead, trace.controller_gains) * lead;
        const Vector u_closed_form = s.truth->G.partialPivLu().solve(delta);
        worst = std::max(worst, inf_norm(s.u_commanded - u_closed_form));
    }
    return worst;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::converged:
            return "converged";
        case Classification::bounded:
            return "bounded";
        case Classification::diverged:
            return "diverged";
    }
    return "unknown";
}

ConvergenceSummary convergence_metrics(const SimTrace& trace, int settle_window, double tol) {
    if (settle_window <= 0 || settle_window > trace.horizon) {
        throw ParameterDomainError("settle window must lie in [1, horizon = " + std::to_string(trace.horizon) + "]");
    }
    ConvergenceSummary out;
    const std::size_t n = trace.steps.size();
    const std::size_t first = n > static_cast<std::size_t>(settle_window) ? n - settle_window : 0;
    for (std::size_t k = first; k < n; ++k) {
        out.final_tracking_error = std::max(out.final_tracking_error, inf_norm(trace.steps[k].tracking_error));
        out.final_estimation_error = std::max(out.final_estimation_error, inf_norm(trace.steps[k].estimation_error));
    }
    if (trace.diverged()) {
        out.classification = Classification::diverged;
    } else if (out.final_tracking_error < tol) {
        out.classification = Classification::converged;
    } else {
        out.classification = Classification::bounded;
    }
    return out;
}

std::vector<SweepEntry> run_alpha_sweep(const SimConfig& base, std::span<const double> alphas, int settle_window,
                                        double tol) {
    std::vector<SweepEntry> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        SimConfig cfg = base;
        cfg.design = ScaledTrueInfluence{alpha};
        SweepEntry entry{alpha, run_closed_loop(cfg), {}};
        entry.summary = convergence_metrics(entry.trace, settle_window, tol);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace ulm
