#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathmec/controller.hpp"
#include "pathmec/frenet.hpp"
#include "pathmec/path.hpp"
#include "pathmec/vehicle.hpp"

namespace pathmec {

/// Default integration step. The stiffest closed-loop pole is the
/// compensator's steering-deviation mode at about -(k1 + C v), up to
/// -3.2e3 1/s over the benchmark C grid; classical RK4 needs
/// |lambda|*dt well inside its stability region (~0.4 gives margin),
/// hence 1e-4 s.
inline constexpr double kDefaultDt = 1e-4;        ///< [s]
inline constexpr double kDefaultZMax = 50.0;      ///< [m]
/// Default onset of the following-error metric. Calibrated once as the
/// smallest multiple of 5 m at which the matched-parameter metric on both
/// benchmark paths falls below 0.05 m, then frozen here.
inline constexpr double kDefaultSkipArclength = 15.0; ///< [m]

/// Termination thresholds of a run. A plant state leaving this region is a
/// divergence; the nominal model leaving it is a singularity (the nominal
/// closed loop is expected to stay well-behaved).
struct GuardLimits {
    double z_max = kDefaultZMax;     ///< cross-track bound [m]
    double d_min = kExistenceEps;    ///< minimum of 1 - kappa_r*z
    double theta_max = kThetaGuard;  ///< heading-error bound [rad]
};

/// Initial condition of the coupled system. The nominal model is
/// initialized identically to the plant.
struct InitialState {
    double beta = 0.0;
    double psi_dot = 0.0;
    double delta = 0.0;
    double theta = 0.0;
    double z = 3.0;
    double s_r = 0.0;
    double xi = 0.0;
    double eta = 0.0;
    double theta_o = 0.0;
};

/// Full specification of one run.
struct ScenarioConfig {
    TargetPath path = builtin_path(BuiltinPath::Path1);
    std::optional<int> builtin_path_id = 1; ///< set when path came from a builtin
    VehicleParams plant;                    ///< true C lives here
    ControllerConfig controller;            ///< gains, C_M, mode
    InitialState initial;
    double dt = kDefaultDt;
    double t_max = 0.0; ///< horizon [s]; when <= 0, resolved to 1.2*L/v at validation
    GuardLimits guards;
    double skip_arclength = kDefaultSkipArclength; ///< metric onset s* [m]

    /// Resolve defaults (t_max) and check every invariant, including the
    /// geometric consistency of the initial state with the path anchor
    /// (orthogonality and existence conditions). Throws ConfigError.
    void validate_and_resolve();
};

enum class RunStatus { Completed, Diverged, Singular, TimedOut };

const char* to_string(RunStatus status);

/// State recorded after each accepted integration step. Inputs and
/// curvatures are evaluated at the recorded state.
struct SimSample {
    double t = 0.0;
    VehicleState plant;
    FrenetState plant_frenet;
    GlobalPose pose;
    VehicleState model;
    FrenetState model_frenet;
    double u = 0.0;
    double u_m = 0.0;
    double u_c = 0.0;
    double kappa = 0.0;   ///< plant trajectory curvature [1/m]
    double kappa_r = 0.0; ///< path curvature at the plant's reference point [1/m]
};

struct RunResult {
    RunStatus status = RunStatus::TimedOut;
    std::vector<SimSample> samples;          ///< one per accepted step, t strictly increasing
    std::optional<double> max_error;         ///< metric; empty for diverged runs
    double max_error_raw = 0.0;              ///< max |z| over the whole run [m]
    std::string termination_reason;          ///< guard description when not Completed
};

/// Integrate the coupled plant/model/error/pose system with fixed-step
/// classical RK4, recomputing the control inputs at every stage, until the
/// plant's s_r reaches the path length (Completed), a guard trips
/// (Diverged/Singular), or t reaches t_max (TimedOut). The scenario is
/// validated first; violations throw ConfigError before any integration.
RunResult run(const ScenarioConfig& config);

/// Max |z| over samples with plant s_r >= skip_arclength. Returns the
/// diverged marker (empty) when the run diverged; throws
/// std::invalid_argument when no sample qualifies.
std::optional<double> max_following_error(const RunResult& result, double skip_arclength);

/// One robustness-table row: both control modes at one true C value.
struct SweepRow {
    double c = 0.0;
    double c_over_cm = 0.0;
    RunStatus conventional_status = RunStatus::TimedOut;
    std::optional<double> conventional_error;
    RunStatus proposed_status = RunStatus::TimedOut;
    std::optional<double> proposed_error;
};

struct SweepResult {
    std::vector<SweepRow> rows; ///< sorted by C
};

/// Run Feedforward and Mec once per C value with everything else taken
/// from base. Rows are deterministic and sorted by C; per-row failures
/// land in the row status and never abort the sweep.
SweepResult sweep(const ScenarioConfig& base, const std::vector<double>& c_values);

} // namespace pathmec
