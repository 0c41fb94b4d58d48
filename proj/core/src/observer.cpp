#include "ulm/observer.hpp"

namespace ulm {

ObserverState make_observer(Eigen::Index n, const GainParams& params) {
    return ObserverState{Vector::Zero(n), params};
}

Vector measure_ulm_dynamics(const Vector& y_future, const Matrix& g_design, const Vector& u_applied) {
    if (g_design.rows() != y_future.size() || g_design.cols() != u_applied.size()) {
        throw DimensionMismatchError("measure_ulm_dynamics: influence matrix is " + std::to_string(g_design.rows()) +
                                     "x" + std::to_string(g_design.cols()) + ", output " +
                                     std::to_string(y_future.size()) + ", input " + std::to_string(u_applied.size()));
    }
    return y_future - g_design * u_applied;
}

ObserverState observer_update(const ObserverState& state, const Vector& f_measured) {
    require_same_size(state.f_hat, f_measured, "observer_update");
    const Vector e = state.f_hat - f_measured;
    return ObserverState{holder_gain(e, state.params) * e + f_measured, state.params};
}

Vector estimation_error(const ObserverState& state, const Vector& f_true) {
    require_same_size(state.f_hat, f_true, "estimation_error");
    return state.f_hat - f_true;
}

}  // namespace ulm
