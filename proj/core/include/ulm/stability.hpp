#pragma once

#include <array>
#include <string>
#include <vector>

#include "ulm/types.hpp"

namespace ulm {

/**
 * Controller/observer gain values (c, d) at which the coupled error dynamics are
 * linearized. Reachable gains lie in [-1, 1); the analysis routines accept the
 * closed square [-1, 1]^2 so that map edges can be evaluated.
 */
struct GainPair {
    double c = -1.0;
    double d = -1.0;
};

/// Roots of alpha*lambda^2 + (1 - c - d - alpha)*lambda + d*c = 0.
struct LambdaRoots {
    std::array<Complex, 2> roots;
    /// alpha == 0: the quadratic collapsed to a linear equation and its single root is repeated.
    bool collapsed = false;

    [[nodiscard]] double max_norm() const { return std::max(std::abs(roots[0]), std::abs(roots[1])); }
};

/// Residual |alpha*l^2 + (1 - c - d - alpha)*l + d*c|.
[[nodiscard]] double root_polynomial_residual(Complex alpha, const GainPair& g, Complex lambda);

/**
 * Both eigenvalues of the linearized coupled error dynamics associated with one
 * eigenvalue alpha of the mismatch matrix H = G_design G^-1.
 *
 * The larger-magnitude root is formed first and the other recovered from the root
 * product d*c/alpha, which keeps both accurate when alpha spans many decades.
 * Throws DegeneratePencilError when alpha == 0 and 1 - c - d == 0, ParameterDomainError on
 * non-finite input.
 */
[[nodiscard]] LambdaRoots lambda_roots(Complex alpha, const GainPair& g);

/// max |lambda| over both roots.
[[nodiscard]] double max_root_norm(Complex alpha, const GainPair& g);

/// alpha = ((1 - c - d) l + d c) / (l - l^2) at l = exp(i theta): the |lambda| = 1 contour.
/// Throws PoleOfMapError when theta is a multiple of 2 pi.
[[nodiscard]] Complex boundary_alpha(double theta, const GainPair& g);

struct BoundaryPoint {
    double theta = 0.0;
    Complex alpha;
};

/// boundary_alpha at theta_i = 2 pi i / segments, i = 1 .. segments - 1 (theta = 0 is the map's pole).
[[nodiscard]] std::vector<BoundaryPoint> boundary_contour(const GainPair& g, int segments);

struct AxisSpec {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    /// count >= 2 with min < max, or a single node (count == 1, min == max).
    void validate() const;
    [[nodiscard]] double at(int i) const;
};

/**
 * Max root norm sampled on a rectangular grid. values is row-major with the first
 * axis as the slow index: values[i * second.count + j] belongs to
 * (first.at(i), second.at(j)). Degenerate nodes hold +infinity.
 */
struct StabilityGrid {
    AxisSpec first;
    AxisSpec second;
    std::vector<double> values;

    [[nodiscard]] double at(int i, int j) const { return values[static_cast<std::size_t>(i) * second.count + j]; }
};

/// Grid over complex alpha (first axis Re, second axis Im) at fixed gains.
[[nodiscard]] StabilityGrid pole_map(const AxisSpec& re_axis, const AxisSpec& im_axis, const GainPair& g);
[[nodiscard]] StabilityGrid pole_map(double re_min, double re_max, double im_min, double im_max, int resolution,
                                     const GainPair& g);

/// Grid over (c, d) at fixed alpha (first axis c, second axis d).
[[nodiscard]] StabilityGrid cd_map(Complex alpha, const AxisSpec& c_axis, const AxisSpec& d_axis);
/// Full square [-1, 1]^2 at the given per-axis resolution.
[[nodiscard]] StabilityGrid cd_map(Complex alpha, int resolution);

/**
 * Linearized coupled error matrix for constant mismatch H:
 *
 *     [ cI - H^-1 (I - H)(1 - c)   -d H^-1 ]
 *     [ H^-1 (I - H)(1 - c)         d H^-1 ]
 *
 * acting on (e^y_{k+v}, e^F_k). Throws SingularInfluenceError when H is not invertible.
 */
[[nodiscard]] ComplexMatrix assemble_A(const ComplexMatrix& H, const GainPair& g);
[[nodiscard]] ComplexMatrix assemble_A(const Matrix& H, const GainPair& g);

/// Input matrix [I; -I] multiplying the perturbation R_k.
[[nodiscard]] Matrix perturbation_input_matrix(Eigen::Index n);

/// |det(A - lambda I)| from a partially pivoted LU factorization.
[[nodiscard]] double char_poly_residual(const ComplexMatrix& A, Complex lambda);

/**
 * Forcing term of the coupled error dynamics with H_{k+1} = H_k = H:
 *
 *     R_k = H ((I - H)(y_d(k+v) - F_k) - (I - H)(y_d(k+v+1) - F_{k+1}) - dF_k)
 *
 * where F denotes the lumped ultra-local dynamics and dF_k the change of the true drift.
 */
[[nodiscard]] Vector perturbation_R(const Vector& f_k, const Vector& f_k1, const Vector& y_d_k, const Vector& y_d_k1,
                                    const Vector& delta_F, const Matrix& H);

}  // namespace ulm
