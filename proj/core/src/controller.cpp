#include "ulm/controller.hpp"

#include <cmath>
#include <string>

namespace ulm {

namespace {

Eigen::PartialPivLU<Matrix> factor_checked(const Matrix& g) {
    if (g.rows() != g.cols() || g.rows() == 0) {
        throw DimensionMismatchError("influence matrix must be square and nonempty, got " + std::to_string(g.rows()) +
                                     "x" + std::to_string(g.cols()));
    }
    if (!g.allFinite()) {
        throw SingularInfluenceError("influence matrix has non-finite entries");
    }
    Eigen::PartialPivLU<Matrix> lu(g);
    const double rcond = lu.rcond();
    if (!(rcond * kMaxInfluenceCondition > 1.0)) {
        throw SingularInfluenceError("influence matrix is singular or ill-conditioned (rcond = " +
                                     std::to_string(rcond) + ")");
    }
    return lu;
}

}  // namespace

double reciprocal_condition(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) {
        return 0.0;
    }
    const double rcond = Eigen::PartialPivLU<Matrix>(m).rcond();
    return std::isfinite(rcond) ? rcond : 0.0;
}

void ControllerConfig::validate() const {
    (void)factor_checked(g_design);
    if (u_max && !(*u_max > 0.0)) {
        throw ParameterDomainError("u_max must be positive, got " + std::to_string(*u_max));
    }
}

Vector control_law(const ControllerConfig& cfg, const Vector& y_desired_future, const Vector& f_hat,
                   const Vector& e_y_prev) {
    require_same_size(y_desired_future, f_hat, "control_law (reference vs estimate)");
    require_same_size(y_desired_future, e_y_prev, "control_law (reference vs tracking error)");
    if (cfg.g_design.rows() != y_desired_future.size()) {
        throw DimensionMismatchError("control_law: influence matrix has " + std::to_string(cfg.g_design.rows()) +
                                     " rows, output has " + std::to_string(y_desired_future.size()));
    }
    const auto lu = factor_checked(cfg.g_design);
    const Vector rhs = y_desired_future - f_hat + holder_gain(e_y_prev, cfg.params) * e_y_prev;
    return lu.solve(rhs);
}

Saturation saturate(const Vector& u, double u_max) {
    Saturation out{u, false};
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u[i] > u_max) {
            out.u[i] = u_max;
            out.clamped = true;
        } else if (u[i] < -u_max) {
            out.u[i] = -u_max;
            out.clamped = true;
        }
    }
    return out;
}

}  // namespace ulm
