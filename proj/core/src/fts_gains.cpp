#include "ulm/fts_gains.hpp"

#include <cmath>
#include <string>

namespace ulm {

GainParams::GainParams(double exponent, double scale) : exponent_(exponent), scale_(scale) {
    if (!(exponent > 1.0 && exponent < 2.0)) {
        throw ParameterDomainError("gain exponent must lie in (1, 2), got " + std::to_string(exponent));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw ParameterDomainError("gain scale must be positive and finite, got " + std::to_string(scale));
    }
}

double lyapunov_value(const Vector& e) noexcept { return e.squaredNorm(); }

double holder_gain(const Vector& e, const GainParams& params) {
    const double energy = lyapunov_value(e);
    if (energy == 0.0) {
        return -1.0;
    }
    const double x = std::pow(energy, params.power());
    if (std::isinf(x)) {
        return 1.0 - 2.0 * params.scale() / x;  // limit form; avoids inf/inf
    }
    return (x - params.scale()) / (x + params.scale());
}

Vector contraction_step(const Vector& e, const GainParams& params) { return holder_gain(e, params) * e; }

double lyapunov_decrease_rate(const Vector& e, const GainParams& params) {
    const double g = holder_gain(e, params);
    return (1.0 - g * g) * std::pow(lyapunov_value(e), params.power());
}

}  // namespace ulm
