#pragma once

#include <optional>

#include "ulm/fts_gains.hpp"
#include "ulm/types.hpp"

namespace ulm {

/// Largest accepted condition number (1-norm estimate) of the designed influence matrix.
inline constexpr double kMaxInfluenceCondition = 1e12;

struct ControllerConfig {
    Matrix g_design;
    GainParams params = default_gain_params();
    std::optional<double> u_max;  ///< infinity-norm bound on the applied input; none = unbounded

    /// Throws SingularInfluenceError / ParameterDomainError / DimensionMismatchError.
    void validate() const;
};

/**
 * Solve G_design u = y_d(k+v) - F_hat + C(e) e for u, where e = e^y(k+v-1) is the
 * tracking error (y - y_d) one step before the controlled output.
 *
 * The solve uses an LU factorization with partial pivoting. A designed matrix whose
 * condition estimate exceeds kMaxInfluenceCondition raises SingularInfluenceError.
 */
[[nodiscard]] Vector control_law(const ControllerConfig& cfg, const Vector& y_desired_future, const Vector& f_hat,
                                 const Vector& e_y_prev);

struct Saturation {
    Vector u;
    bool clamped = false;
};

/// Componentwise clamp to [-u_max, u_max].
[[nodiscard]] Saturation saturate(const Vector& u, double u_max);

/// Reciprocal condition estimate of a square matrix (0 for singular or non-square input).
[[nodiscard]] double reciprocal_condition(const Matrix& m);

}  // namespace ulm
