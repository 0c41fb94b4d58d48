#include "ulm/stability.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ulm/controller.hpp"

namespace ulm {

double root_polynomial_residual(Complex alpha, const GainPair& g, Complex lambda) {
    const Complex b = 1.0 - g.c - g.d - alpha;
    return std::abs((alpha * lambda + b) * lambda + g.d * g.c);
}

LambdaRoots lambda_roots(Complex alpha, const GainPair& g) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(g.c) || !std::isfinite(g.d)) {
        throw ParameterDomainError("lambda_roots needs finite alpha, c and d");
    }
    const Complex b = 1.0 - g.c - g.d - alpha;
    const double q = g.d * g.c;

    if (alpha == Complex{0.0, 0.0}) {
        if (b == Complex{0.0, 0.0}) {
            throw DegeneratePencilError("alpha = 0 and 1 - c - d = 0: no isolated root");
        }
        const Complex root = -q / b;
        return {{root, root}, true};
    }

    const Complex s = std::sqrt(b * b - 4.0 * alpha * q);
    // Pick the sign that adds magnitudes: Re(conj(b) s) >= 0.
    const Complex t = (std::real(std::conj(b) * s) >= 0.0) ? -0.5 * (b + s) : -0.5 * (b - s);
    if (t == Complex{0.0, 0.0}) {
        // b = 0 and b^2 = 4 alpha q forces q = 0: double root at the origin.
        return {{Complex{}, Complex{}}, false};
    }
    return {{t / alpha, q / t}, false};
}

double max_root_norm(Complex alpha, const GainPair& g) { return lambda_roots(alpha, g).max_norm(); }

Complex boundary_alpha(double theta, const GainPair& g) {
    const Complex lambda = std::polar(1.0, theta);
    const Complex denom = lambda - lambda * lambda;
    if (std::abs(denom) < 1e-14) {
        throw PoleOfMapError("boundary map has a pole at theta = 0 (mod 2 pi)");
    }
    return ((1.0 - g.c - g.d) * lambda + g.d * g.c) / denom;
}

std::vector<BoundaryPoint> boundary_contour(const GainPair& g, int segments) {
    if (segments < 2) {
        throw ParameterDomainError("boundary contour needs at least 2 segments");
    }
    std::vector<BoundaryPoint> out;
    out.reserve(static_cast<std::size_t>(segments - 1));
    for (int i = 1; i < segments; ++i) {
        const double theta = std::numbers::pi * (2.0 * static_cast<double>(i) / static_cast<double>(segments));
        out.push_back({theta, boundary_alpha(theta, g)});
    }
    return out;
}

void AxisSpec::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw ParameterDomainError("axis '" + name + "' has non-finite bounds");
    }
    if (count == 1) {
        if (min != max) {
            throw ParameterDomainError("axis '" + name + "' with a single node needs min == max");
        }
        return;
    }
    if (count < 2) {
        throw ParameterDomainError("axis '" + name + "' needs at least 2 nodes");
    }
    if (!(min < max)) {
        throw ParameterDomainError("axis '" + name + "' needs min < max");
    }
}

double AxisSpec::at(int i) const {
    if (count == 1) {
        return min;
    }
    // Weighted form: ranges symmetric about 0 give exactly mirrored nodes.
    const double last = count - 1;
    return (min * (last - i) + max * i) / last;
}

namespace {

double safe_norm(Complex alpha, const GainPair& g) {
    try {
        return max_root_norm(alpha, g);
    } catch (const DegeneratePencilError&) {
        return std::numeric_limits<double>::infinity();
    }
}

template <typename Fn>
StabilityGrid sweep(const AxisSpec& first, const AxisSpec& second, Fn&& value_at) {
    first.validate();
    second.validate();
    StabilityGrid grid{first, second, {}};
    grid.values.reserve(static_cast<std::size_t>(first.count) * second.count);
    for (int i = 0; i < first.count; ++i) {
        for (int j = 0; j < second.count; ++j) {
            grid.values.push_back(value_at(first.at(i), second.at(j)));
        }
    }
    return grid;
}

}  // namespace

StabilityGrid pole_map(const AxisSpec& re_axis, const AxisSpec& im_axis, const GainPair& g) {
    return sweep(re_axis, im_axis, [&](double re, double im) { return safe_norm({re, im}, g); });
}

StabilityGrid pole_map(double re_min, double re_max, double im_min, double im_max, int resolution,
                       const GainPair& g) {
    return pole_map(AxisSpec{"re_alpha", re_min, re_max, resolution}, AxisSpec{"im_alpha", im_min, im_max, resolution},
                    g);
}

StabilityGrid cd_map(Complex alpha, const AxisSpec& c_axis, const AxisSpec& d_axis) {
    return sweep(c_axis, d_axis, [&](double c, double d) { return safe_norm(alpha, GainPair{c, d}); });
}

StabilityGrid cd_map(Complex alpha, int resolution) {
    return cd_map(alpha, AxisSpec{"c", -1.0, 1.0, resolution}, AxisSpec{"d", -1.0, 1.0, resolution});
}

ComplexMatrix assemble_A(const ComplexMatrix& H, const GainPair& g) {
    if (H.rows() != H.cols() || H.rows() == 0) {
        throw DimensionMismatchError("mismatch matrix H must be square and nonempty");
    }
    const Eigen::Index n = H.rows();
    Eigen::PartialPivLU<ComplexMatrix> lu(H);
    const double rcond = lu.rcond();
    if (!(rcond * kMaxInfluenceCondition > 1.0)) {
        throw SingularInfluenceError("mismatch matrix H is singular or ill-conditioned");
    }
    const ComplexMatrix h_inv = lu.inverse();
    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
    const ComplexMatrix coupling = h_inv * (identity - H) * (1.0 - g.c);

    ComplexMatrix A(2 * n, 2 * n);
    A.topLeftCorner(n, n) = g.c * identity - coupling;
    A.topRightCorner(n, n) = -g.d * h_inv;
    A.bottomLeftCorner(n, n) = coupling;
    A.bottomRightCorner(n, n) = g.d * h_inv;
    return A;
}

ComplexMatrix assemble_A(const Matrix& H, const GainPair& g) { return assemble_A(ComplexMatrix(H.cast<Complex>()), g); }

Matrix perturbation_input_matrix(Eigen::Index n) {
    Matrix B(2 * n, n);
    B.topRows(n) = Matrix::Identity(n, n);
    B.bottomRows(n) = -Matrix::Identity(n, n);
    return B;
}

double char_poly_residual(const ComplexMatrix& A, Complex lambda) {
    if (A.rows() != A.cols()) {
        throw DimensionMismatchError("char_poly_residual needs a square matrix");
    }
    ComplexMatrix shifted = A;
    shifted.diagonal().array() -= lambda;
    return std::abs(Eigen::PartialPivLU<ComplexMatrix>(shifted).determinant());
}

Vector perturbation_R(const Vector& f_k, const Vector& f_k1, const Vector& y_d_k, const Vector& y_d_k1,
                      const Vector& delta_F, const Matrix& H) {
    require_same_size(f_k, f_k1, "perturbation_R (F_k vs F_k+1)");
    require_same_size(f_k, y_d_k, "perturbation_R (F_k vs y_d)");
    require_same_size(f_k, y_d_k1, "perturbation_R (F_k vs y_d next)");
    require_same_size(f_k, delta_F, "perturbation_R (F_k vs dF)");
    if (H.rows() != f_k.size() || H.cols() != f_k.size()) {
        throw DimensionMismatchError("perturbation_R: H must be n x n");
    }
    const Matrix i_minus_h = Matrix::Identity(H.rows(), H.cols()) - H;
    return H * (i_minus_h * (y_d_k - f_k) - i_minus_h * (y_d_k1 - f_k1) - delta_F);
}

}  // namespace ulm
