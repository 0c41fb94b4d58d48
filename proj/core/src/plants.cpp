#include "ulm/plants.hpp"

#include <cmath>
#include <string>

#include "ulm/controller.hpp"

namespace ulm {

void PlantSignature::validate() const {
    if (output_dim <= 0 || output_dim != input_dim) {
        throw DimensionMismatchError("plant must have as many inputs as outputs (got n = " +
                                     std::to_string(output_dim) + ", m = " + std::to_string(input_dim) + ")");
    }
    if (order < 1) {
        throw ParameterDomainError("plant order must be at least 1");
    }
}

void RigidBodyParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ParameterDomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
        }
    };
    positive(mass, "mass");
    positive(inertia, "inertia");
    positive(dt, "dt");
}

Matrix rigid_body_G(double theta, const RigidBodyParams& p) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double h2 = p.dt * p.dt;
    Matrix g = Matrix::Zero(3, 3);
    g(0, 0) = h2 * c / p.mass;
    g(0, 1) = h2 * s / p.mass;
    g(1, 0) = -h2 * s / p.mass;
    g(1, 1) = h2 * c / p.mass;
    g(2, 2) = h2 / p.inertia;
    return g;
}

Vector rigid_body_F(const PlantState& state) {
    require_same_size(state.y_prev, state.y_curr, "rigid_body_F");
    return 2.0 * state.y_curr - state.y_prev;
}

TrueDynamics true_dynamics_oracle(const PlantState& state, const RigidBodyParams& p) {
    if (state.y_prev.size() != 3 || state.y_curr.size() != 3) {
        throw DimensionMismatchError("rigid body state must hold 3-vectors (x, z, theta)");
    }
    return {rigid_body_F(state), rigid_body_G(state.y_prev[2], p)};
}

PlantState plant_step(const PlantState& state, const Vector& u, const RigidBodyParams& p) {
    return step(Plant{RigidBodyPlant{p}}, state, u);
}

TrueDynamics LinearPlant::dynamics(const PlantState& state) const {
    if (state.y_prev.size() != G.rows()) {
        throw DimensionMismatchError("linear plant state has wrong dimension");
    }
    return {rigid_body_F(state), G};
}

PlantSignature signature(const Plant& plant) {
    return std::visit([](const auto& p) { return p.signature(); }, plant);
}

TrueDynamics dynamics(const Plant& plant, const PlantState& state) {
    return std::visit([&](const auto& p) { return p.dynamics(state); }, plant);
}

PlantState step(const Plant& plant, const PlantState& state, const Vector& u) {
    const TrueDynamics truth = dynamics(plant, state);
    if (u.size() != truth.G.cols()) {
        throw DimensionMismatchError("plant input has size " + std::to_string(u.size()) + ", expected " +
                                     std::to_string(truth.G.cols()));
    }
    return PlantState{state.y_curr, truth.F + truth.G * u};
}

void validate(const Plant& plant) {
    signature(plant).validate();
    if (const auto* rb = std::get_if<RigidBodyPlant>(&plant)) {
        rb->params.validate();
    } else if (const auto* lin = std::get_if<LinearPlant>(&plant)) {
        if (reciprocal_condition(lin->G) * kMaxInfluenceCondition <= 1.0) {
            throw SingularInfluenceError("linear plant influence matrix is not invertible");
        }
    }
}

}  // namespace ulm
