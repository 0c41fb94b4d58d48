#pragma once

#include "ulm/fts_gains.hpp"
#include "ulm/types.hpp"

namespace ulm {

/// Estimate of the lumped ultra-local dynamics together with the observer gain parameters.
struct ObserverState {
    Vector f_hat;
    GainParams params = default_gain_params();
};

/// Zero initial estimate of dimension n.
[[nodiscard]] ObserverState make_observer(Eigen::Index n, const GainParams& params = default_gain_params());

// Realized lumped dynamics F_k = y_{k+v} - G_design u_k. Pass the input that
// actually reached the plant (after saturation).
[[nodiscard]] Vector measure_ulm_dynamics(const Vector& y_future, const Matrix& g_design, const Vector& u_applied);

/// F_hat(next) = D(e) e + F_measured, with e = F_hat - F_measured.
[[nodiscard]] ObserverState observer_update(const ObserverState& state, const Vector& f_measured);

/// F_hat - F_true.
[[nodiscard]] Vector estimation_error(const ObserverState& state, const Vector& f_true);

}  // namespace ulm
