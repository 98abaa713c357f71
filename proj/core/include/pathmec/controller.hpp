#pragma once

#include "pathmec/frenet.hpp"
#include "pathmec/path.hpp"
#include "pathmec/vehicle.hpp"

namespace pathmec {

/// theta guard of the tracking law: tan(theta) and 1/cos(theta) appear in
/// it, so evaluation is refused at 85 degrees and beyond.
inline constexpr double kThetaGuard = 1.4835298641951802; // 85 deg [rad]

enum class ControlMode {
    Feedforward,    ///< nominal-model feedforward only (u_c = 0), the baseline method
    Mec,            ///< feedforward plus model-error compensation input
    DirectFeedback, ///< diagnostic: tracking law evaluated on plant states with C_M
};

/// Hurwitz coefficients of the prescribed error dynamics
/// z''' + alpha1 z'' + alpha2 z' + alpha3 z = 0, and the compensator
/// feedback gains. Construction enforces the Routh condition
/// alpha1 > 0, alpha3 > 0, alpha1*alpha2 > alpha3.
struct ControllerGains {
    ControllerGains(double alpha1, double alpha2, double alpha3,
                    double k1, double k2, double k3);

    double alpha1;
    double alpha2;
    double alpha3;
    double k1;
    double k2;
    double k3;
};

/// Benchmark gains: alpha = (400, 500, 240) and k_i = 5*alpha_i.
ControllerGains default_gains();

struct ControllerConfig {
    ControllerGains gains = default_gains();
    double c_nominal = 200.0; ///< C_M, the modeled resistance coefficient [1/m]
    ControlMode mode = ControlMode::Mec;
};

/// Everything the tracking law reads about one system (plant or nominal
/// model) at one instant. beta_dot and psi_ddot are the first two rows of
/// plant_derivative evaluated analytically (they do not depend on u or C);
/// kappa_r_dot is the time derivative (dkappa_r/ds)(s_r) * s_r'.
struct ControlSnapshot {
    double beta = 0.0;
    double psi_dot = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double s_r = 0.0;
    double z = 0.0;
    double kappa_r = 0.0;     ///< path curvature at this system's reference point [1/m]
    double kappa_r_dot = 0.0; ///< [1/(m s)]
    double beta_dot = 0.0;    ///< [1/s]
    double psi_ddot = 0.0;    ///< [1/s^2]
};

/// Evaluation guards of the law; defaults match the simulation guards.
struct ControlGuards {
    double d_min = kExistenceEps;    ///< minimum of 1 - kappa_r*z
    double theta_max = kThetaGuard;  ///< heading-error bound [rad]
};

/// Path curvature and its time derivative at the measured reference point.
/// One signal feeds the whole control system: the nominal model has no
/// reference point of its own, it consumes the plant's.
struct PathSignal {
    double kappa_r = 0.0;     ///< [1/m]
    double kappa_r_dot = 0.0; ///< (dkappa_r/ds)(s_r) * s_r' [1/(m s)]
};

/// Sample the path signal at the reference point of the given error state.
/// Lookups use the extended (extrapolating) accessor so reference points
/// just past the endpoint remain evaluable.
PathSignal measure_path_signal(const TargetPath& path, double v, const FrenetState& f);

/// Assemble a ControlSnapshot from a state pair and the measured path
/// signal.
ControlSnapshot make_snapshot(const VehicleParams& nominal, const VehicleState& x,
                              const FrenetState& f, const PathSignal& signal);

/// Convenience overload: derive the path signal from the state's own
/// reference point.
ControlSnapshot make_snapshot(const VehicleParams& nominal, const TargetPath& path,
                              const VehicleState& x, const FrenetState& f);

/// Ideal steering input command for zero steering resistance: substituting
/// delta' = u0 into the system makes z''' + alpha1 z'' + alpha2 z' +
/// alpha3 z = 0 hold identically. Throws SingularityError on guard
/// violation.
double u_zero(const ControllerGains& g, const VehicleParams& nominal,
              const ControlSnapshot& s, const ControlGuards& guards = {});

/// Resistance-aware tracking input u = u0 + c*v*delta.
double u_ideal(const ControllerGains& g, const VehicleParams& nominal,
               const ControlSnapshot& s, double c, const ControlGuards& guards = {});

/// Compensation input u_c built from the model-vs-plant discrepancy of the
/// tracking law's bracket terms. Each bracket group evaluates the path
/// curvature at that system's own reference point. Zero when the snapshots
/// are identical.
double u_compensation(const ControllerGains& g, const VehicleParams& nominal,
                      const ControlSnapshot& model, const ControlSnapshot& plant,
                      const ControlGuards& guards = {});

/// Combine the feedforward and compensation inputs. Mec applies u_m + u_c;
/// Feedforward applies u_m alone. For DirectFeedback the caller passes the
/// plant-snapshot u_ideal value as u_m and it is applied unchanged.
double total_input(double u_m, double u_c, ControlMode mode);

/// Feedforward input of the self-contained nominal closed loop:
/// u_ideal on the model snapshot with c = c_nominal.
double model_loop_input(const ControllerGains& g, const VehicleParams& nominal,
                        const ControlSnapshot& model, double c_nominal,
                        const ControlGuards& guards = {});

} // namespace pathmec
