#pragma once

namespace pathmec {

/// Coefficients of the three-state lateral model plus run constants.
/// a11..a23 are the given model coefficients (units making each
/// state-equation term consistent); v is the constant speed; c is the
/// steering-resistance coefficient C in delta' = u - C*v*delta.
///
/// a11 is the sideslip relaxation coefficient -(Cf+Cr)/m and must be
/// negative for the internal (zero) dynamics to be stable: holding the
/// trajectory curvature at its reference pins a11*beta + a12/v*psi_dot +
/// a13*delta, and the remaining (beta, psi_dot) system is Hurwitz iff
/// a21*a13 - a23*a11 > 0 and a22*a13 - a23*a12 < 0.
struct VehicleParams {
    double a11 = -79.5;
    double a12 = 12.4;
    double a13 = 30.1;
    double a21 = 8.48;
    double a22 = -88.4;
    double a23 = 29.4;
    double v = 3.0;         ///< speed [m/s], constant per run
    double c = 200.0;       ///< steering resistance coefficient [1/m]
    double wheelbase = 2.55; ///< [m], metadata only; no equation consumes it

    /// v > 0, a13 != 0, c >= 0. Throws ConfigError naming the field.
    void validate(const char* prefix = "vehicle") const;
};

/// Plant state: sideslip angle, yaw rate, steering angle.
struct VehicleState {
    double beta = 0.0;    ///< [rad]
    double psi_dot = 0.0; ///< [rad/s]
    double delta = 0.0;   ///< [rad]
};

/// Right-hand side of the plant:
///   beta'    = a11/v * beta + (-1 + a12/v^2) * psi_dot + a13/v * delta
///   psi_dot' = a21 * beta + a22/v * psi_dot + a23 * delta
///   delta'   = u - C*v*delta
VehicleState plant_derivative(const VehicleParams& p, const VehicleState& x, double u);

/// Curvature of the trajectory traced by the plant:
///   kappa = a11/v^2 * beta + a12/v^3 * psi_dot + a13/v^2 * delta
double trajectory_curvature(const VehicleParams& p, const VehicleState& x);

} // namespace pathmec
