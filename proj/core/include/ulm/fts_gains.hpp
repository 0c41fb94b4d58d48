#pragma once

#include "ulm/types.hpp"

namespace ulm {

/**
 * Parameters of the Hoelder-continuous gain
 *
 *     g(e) = ((e'e)^(1 - 1/rho) - kappa) / ((e'e)^(1 - 1/rho) + kappa)
 *
 * used by both the observer (r, gamma) and the tracking controller (s, mu).
 * rho must lie strictly inside (1, 2) and kappa must be positive.
 */
class GainParams {
public:
    GainParams(double exponent, double scale);

    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

    /// 1 - 1/rho, the power applied to e'e inside the gain.
    [[nodiscard]] double power() const noexcept { return 1.0 - 1.0 / exponent_; }

    friend bool operator==(const GainParams&, const GainParams&) = default;

private:
    double exponent_;
    double scale_;
};

/// Neutral defaults (exponent 1.5, unit scale) for observer and controller.
inline GainParams default_gain_params() { return GainParams{1.5, 1.0}; }

/// Gain value in [-1, 1); equals -1 exactly when e is the zero vector.
[[nodiscard]] double holder_gain(const Vector& e, const GainParams& params);

/// One step of the unperturbed error map e -> g(e) e.
[[nodiscard]] Vector contraction_step(const Vector& e, const GainParams& params);

/// V = e'e.
[[nodiscard]] double lyapunov_value(const Vector& e) noexcept;

/// Decrease rate gamma_k = (1 - g(e)^2) V^(1 - 1/rho), so that
/// V(next) - V = -gamma_k V^(1/rho) along contraction_step.
[[nodiscard]] double lyapunov_decrease_rate(const Vector& e, const GainParams& params);

}  // namespace ulm
