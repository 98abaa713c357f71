#include "pathmec/vehicle.hpp"

#include <string>

#include "pathmec/errors.hpp"

namespace pathmec {

void VehicleParams::validate(const char* prefix) const {
    const std::string p(prefix);
    if (!(v > 0.0))
        throw ConfigError(p + ".v", "speed must be > 0 (the model divides by v, v^2, v^3)");
    if (a13 == 0.0)
        throw ConfigError(p + ".a13", "must be nonzero (the control law divides by a13)");
    if (!(c >= 0.0))
        throw ConfigError(p + ".c", "steering resistance coefficient must be >= 0");
}

VehicleState plant_derivative(const VehicleParams& p, const VehicleState& x, double u) {
    VehicleState d;
    d.beta = p.a11 / p.v * x.beta + (-1.0 + p.a12 / (p.v * p.v)) * x.psi_dot + p.a13 / p.v * x.delta;
    d.psi_dot = p.a21 * x.beta + p.a22 / p.v * x.psi_dot + p.a23 * x.delta;
    d.delta = u - p.c * p.v * x.delta;
    return d;
}

double trajectory_curvature(const VehicleParams& p, const VehicleState& x) {
    const double v2 = p.v * p.v;
    return p.a11 / v2 * x.beta + p.a12 / (v2 * p.v) * x.psi_dot + p.a13 / v2 * x.delta;
}

} // namespace pathmec
