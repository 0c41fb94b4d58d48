#pragma once

#include <variant>

#include "ulm/types.hpp"

namespace ulm {

/// Output/input dimensions and output order v (input u_k first reaches y_{k+v}).
struct PlantSignature {
    Eigen::Index output_dim = 0;
    Eigen::Index input_dim = 0;
    int order = 1;

    void validate() const;
};

/// Planar rigid body: mass [kg], rotational inertia [kg m^2], time step [s].
struct RigidBodyParams {
    double mass = 2.0;
    double inertia = 3.0;
    double dt = 0.05;

    void validate() const;
};

/// Two consecutive outputs y_k (older) and y_{k+1}; for the rigid body each is (x, z, theta).
struct PlantState {
    Vector y_prev;
    Vector y_curr;
};
using RigidBodyState = PlantState;

/// Ground truth of y_{k+v} = F_k + G_k u_k at one step.
struct TrueDynamics {
    Vector F;
    Matrix G;
};

/// G(theta) = dt^2 [[cos/m, sin/m, 0], [-sin/m, cos/m, 0], [0, 0, 1/I]].
[[nodiscard]] Matrix rigid_body_G(double theta, const RigidBodyParams& p);

/// F_k = 2 y_{k+1} - y_k.
[[nodiscard]] Vector rigid_body_F(const PlantState& state);

/// Advance one step: (y_k, y_{k+1}) -> (y_{k+1}, F_k + G(theta_k) u). theta_k is read from y_prev.
[[nodiscard]] PlantState plant_step(const PlantState& state, const Vector& u, const RigidBodyParams& p);

/// The exact (F_k, G_k) used by plant_step.
[[nodiscard]] TrueDynamics true_dynamics_oracle(const PlantState& state, const RigidBodyParams& p);

// Plants usable by the closed-loop harness. Both are second-order (v = 2)
// finite-difference models with F_k = 2 y_{k+1} - y_k.

struct RigidBodyPlant {
    RigidBodyParams params;

    [[nodiscard]] PlantSignature signature() const { return {3, 3, 2}; }
    [[nodiscard]] TrueDynamics dynamics(const PlantState& state) const { return true_dynamics_oracle(state, params); }
};

/// Double integrator with a constant input influence matrix, so H = G_design G^-1 is exactly constant.
struct LinearPlant {
    Matrix G;
    double dt = 0.05;  ///< only sets the time base of references

    [[nodiscard]] PlantSignature signature() const { return {G.rows(), G.cols(), 2}; }
    [[nodiscard]] TrueDynamics dynamics(const PlantState& state) const;
};

using Plant = std::variant<RigidBodyPlant, LinearPlant>;

[[nodiscard]] PlantSignature signature(const Plant& plant);
[[nodiscard]] TrueDynamics dynamics(const Plant& plant, const PlantState& state);
[[nodiscard]] PlantState step(const Plant& plant, const PlantState& state, const Vector& u);

/// Validates parameters, n = m, and invertibility of a constant G.
void validate(const Plant& plant);

}  // namespace ulm
