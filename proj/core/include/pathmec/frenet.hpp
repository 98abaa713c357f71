#pragma once

namespace pathmec {

/// Margin turning the open existence condition 1 - kappa_r*z > 0 into a
/// testable guard.
inline constexpr double kExistenceEps = 1e-3;

/// Reference-point error state relative to the target path.
struct FrenetState {
    double theta = 0.0; ///< heading error theta_o - theta_r(s_r) [rad]
    double s_r = 0.0;   ///< reference-point arc length [m]
    double z = 0.0;     ///< signed cross-track distance [m], positive left of the tangent
};

/// Inertial-frame pose of the plant, used for plotting and cross-validation.
struct GlobalPose {
    double xi = 0.0;      ///< [m]
    double eta = 0.0;     ///< [m]
    double theta_o = 0.0; ///< velocity-vector orientation [rad]
};

/// Error dynamics at the reference point:
///   theta' = kappa*v - kappa_r * v*cos(theta) / (1 - kappa_r*z)
///   s_r'   = v*cos(theta) / (1 - kappa_r*z)
///   z'     = v*sin(theta)
/// Throws SingularityError when 1 - kappa_r*z <= existence_eps.
FrenetState frenet_derivative(double kappa, double kappa_r, double v, const FrenetState& f,
                              double existence_eps = kExistenceEps);

/// Inertial pose dynamics: (xi', eta', theta_o') = (v cos, v sin, kappa*v).
GlobalPose pose_derivative(double v, double kappa, const GlobalPose& g);

/// Existence condition of the reference point: 1 - kappa_r*z > eps.
bool check_existence(double kappa_r, double z, double eps);

} // namespace pathmec
