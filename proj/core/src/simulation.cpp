#include "pathmec/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pathmec/errors.hpp"

namespace pathmec {

namespace {

// Packed coupled state: plant (3) + plant error state (3) + pose (3) +
// model (3) + model error state (3).
constexpr int kDim = 15;
enum Index : int {
    iBeta, iPsiDot, iDelta, iTheta, iSr, iZ, iXi, iEta, iThetaO,
    iMBeta, iMPsiDot, iMDelta, iMTheta, iMSr, iMZ,
};
using StateVec = std::array<double, kDim>;

struct GuardTrip {
    RunStatus status;
    std::string reason;
};

struct Inputs {
    double u = 0.0;
    double u_m = 0.0;
    double u_c = 0.0;
    double kappa = 0.0;
    double kappa_r = 0.0;
};

StateVec pack(const InitialState& s) {
    return {s.beta, s.psi_dot, s.delta, s.theta, s.s_r, s.z, s.xi, s.eta, s.theta_o,
            s.beta, s.psi_dot, s.delta, s.theta, s.s_r, s.z};
}

VehicleState vehicle_of(const StateVec& y, int base) {
    return {y[base + 0], y[base + 1], y[base + 2]};
}

FrenetState frenet_of(const StateVec& y, int base) {
    return {y[base + 0], y[base + 1], y[base + 2]};
}

class Integrator {
public:
    explicit Integrator(const ScenarioConfig& cfg)
        : cfg_(cfg), nominal_(cfg.plant), ctrl_guards_{cfg.guards.d_min, cfg.guards.theta_max} {
        nominal_.c = cfg.controller.c_nominal;
    }

    // Admissibility of one state; plant-side violations classify as
    // Diverged, model-side as Singular.
    void check_guards(const StateVec& y) const {
        for (int i = 0; i < kDim; ++i)
            if (!std::isfinite(y[i]))
                throw GuardTrip{i >= iMBeta ? RunStatus::Singular : RunStatus::Diverged,
                                "non-finite state component"};
        const double kappa_r = cfg_.path.curvature_extended(y[iSr]);
        check_side(y, kappa_r, iTheta, iZ, RunStatus::Diverged, "plant");
        check_side(y, kappa_r, iMTheta, iMZ, RunStatus::Singular, "model");
    }

    // One path signal, sampled at the plant's measured reference point,
    // feeds the whole control system; the nominal model carries no
    // reference point of its own.
    Inputs evaluate_inputs(const StateVec& y) const {
        const PathSignal signal =
            measure_path_signal(cfg_.path, cfg_.plant.v, frenet_of(y, iTheta));
        const ControlSnapshot model =
            make_snapshot(nominal_, vehicle_of(y, iMBeta), frenet_of(y, iMTheta), signal);
        Inputs in;
        in.u_m = model_loop_input(cfg_.controller.gains, nominal_, model,
                                  cfg_.controller.c_nominal, ctrl_guards_);
        switch (cfg_.controller.mode) {
            case ControlMode::Feedforward:
                in.u = total_input(in.u_m, 0.0, ControlMode::Feedforward);
                break;
            case ControlMode::Mec: {
                const ControlSnapshot plant =
                    make_snapshot(nominal_, vehicle_of(y, iBeta), frenet_of(y, iTheta), signal);
                in.u_c = u_compensation(cfg_.controller.gains, nominal_, model, plant,
                                        ctrl_guards_);
                in.u = total_input(in.u_m, in.u_c, ControlMode::Mec);
                break;
            }
            case ControlMode::DirectFeedback: {
                const ControlSnapshot plant =
                    make_snapshot(nominal_, vehicle_of(y, iBeta), frenet_of(y, iTheta), signal);
                const double u_direct = u_zero(cfg_.controller.gains, nominal_, plant,
                                               ctrl_guards_) +
                                        cfg_.controller.c_nominal * nominal_.v * model.delta;
                in.u = total_input(u_direct, 0.0, ControlMode::DirectFeedback);
                break;
            }
        }
        in.kappa = trajectory_curvature(cfg_.plant, vehicle_of(y, iBeta));
        in.kappa_r = signal.kappa_r;
        return in;
    }

    StateVec derivative(const StateVec& y) const {
        check_guards(y);
        const Inputs in = evaluate_inputs(y);
        const double v = cfg_.plant.v;

        const VehicleState dp = plant_derivative(cfg_.plant, vehicle_of(y, iBeta), in.u);
        const FrenetState df = frenet_derivative(in.kappa, in.kappa_r, v, frenet_of(y, iTheta),
                                                 cfg_.guards.d_min);
        const GlobalPose dg = pose_derivative(v, in.kappa, GlobalPose{y[iXi], y[iEta], y[iThetaO]});

        // The model's error state also evolves against the measured path
        // signal. Its s_r component is integrated as a diagnostic only.
        const VehicleState xm = vehicle_of(y, iMBeta);
        const VehicleState dm = plant_derivative(nominal_, xm, in.u_m);
        const double kappa_m = trajectory_curvature(nominal_, xm);
        const FrenetState dmf = frenet_derivative(kappa_m, in.kappa_r, v, frenet_of(y, iMTheta),
                                                  cfg_.guards.d_min);

        return {dp.beta, dp.psi_dot, dp.delta, df.theta, df.s_r, df.z,
                dg.xi, dg.eta, dg.theta_o,
                dm.beta, dm.psi_dot, dm.delta, dmf.theta, dmf.s_r, dmf.z};
    }

    StateVec rk4_step(const StateVec& y, double dt) const {
        const StateVec k1 = derivative(y);
        StateVec tmp;
        for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        const StateVec k2 = derivative(tmp);
        for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        const StateVec k3 = derivative(tmp);
        for (int i = 0; i < kDim; ++i) tmp[i] = y[i] + dt * k3[i];
        const StateVec k4 = derivative(tmp);
        StateVec out;
        for (int i = 0; i < kDim; ++i)
            out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        return out;
    }

private:
    void check_side(const StateVec& y, double kappa_r, int theta, int z, RunStatus status,
                    const char* side) const {
        const std::string name(side);
        if (std::abs(y[z]) > cfg_.guards.z_max)
            throw GuardTrip{status, name + " cross-track |z| = " + std::to_string(std::abs(y[z])) +
                                        " m exceeded z_max = " + std::to_string(cfg_.guards.z_max)};
        if (!check_existence(kappa_r, y[z], cfg_.guards.d_min))
            throw GuardTrip{status, name + " existence condition 1 - kappa_r*z = " +
                                        std::to_string(1.0 - kappa_r * y[z]) + " <= d_min"};
        if (std::abs(y[theta]) >= cfg_.guards.theta_max)
            throw GuardTrip{status, name + " heading error |theta| = " +
                                        std::to_string(std::abs(y[theta])) + " rad >= theta_max"};
    }

    const ScenarioConfig& cfg_;
    VehicleParams nominal_; // plant coefficients with C replaced by C_M
    ControlGuards ctrl_guards_;
};

SimSample make_sample(double t, const StateVec& y, const Inputs& in) {
    SimSample s;
    s.t = t;
    s.plant = vehicle_of(y, iBeta);
    s.plant_frenet = frenet_of(y, iTheta);
    s.pose = {y[iXi], y[iEta], y[iThetaO]};
    s.model = vehicle_of(y, iMBeta);
    s.model_frenet = frenet_of(y, iMTheta);
    s.u = in.u;
    s.u_m = in.u_m;
    s.u_c = in.u_c;
    s.kappa = in.kappa;
    s.kappa_r = in.kappa_r;
    return s;
}

} // namespace

const char* to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Completed: return "Completed";
        case RunStatus::Diverged: return "Diverged";
        case RunStatus::Singular: return "Singular";
        case RunStatus::TimedOut: return "TimedOut";
    }
    return "Unknown";
}

void ScenarioConfig::validate_and_resolve() {
    plant.validate("vehicle");
    if (!(controller.c_nominal >= 0.0))
        throw ConfigError("controller.c_nominal", "must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("simulation.dt", "must be > 0");
    if (t_max <= 0.0) t_max = 1.2 * path.length() / plant.v;
    if (!(t_max > 0.0)) throw ConfigError("simulation.t_max", "must be > 0");
    if (!(guards.z_max > std::abs(initial.z)))
        throw ConfigError("simulation.z_max", "must exceed the initial |z|");
    if (!(guards.d_min > 0.0)) throw ConfigError("simulation.d_min", "must be > 0");
    if (!(guards.theta_max > 0.0)) throw ConfigError("simulation.theta_max", "must be > 0");
    if (!(skip_arclength >= 0.0 && skip_arclength < path.length()))
        throw ConfigError("simulation.skip_arclength",
                          "must lie in [0, path length)");

    // Geometric consistency of the initial state (conditions B1/B2): the
    // vector from the path point at s_r(0) to the plant must be orthogonal
    // to the path tangent, have signed length z(0), and satisfy the
    // existence condition; theta must equal theta_o - theta_r(s_r(0)).
    if (initial.s_r < 0.0 || initial.s_r > path.length())
        throw ConfigError("simulation.initial.s_r", "must lie in [0, path length]");
    const PathPoint ref = path.point_at(initial.s_r);
    const double qx = initial.xi - ref.xi_r;
    const double qy = initial.eta - ref.eta_r;
    const double along = qx * std::cos(ref.theta_r) + qy * std::sin(ref.theta_r);
    const double across = -qx * std::sin(ref.theta_r) + qy * std::cos(ref.theta_r);
    constexpr double tol = 1e-6;
    if (std::abs(along) > tol)
        throw ConfigError("simulation.initial",
                          "orthogonality condition violated: the plant position is not "
                          "perpendicular to the path tangent at s_r(0) (offset " +
                              std::to_string(along) + " m along the tangent)");
    if (std::abs(across - initial.z) > tol)
        throw ConfigError("simulation.initial.z",
                          "does not match the signed cross-track distance implied by the "
                          "plant position (" + std::to_string(across) + " m)");
    const double theta_expected = initial.theta_o - ref.theta_r;
    if (std::abs(initial.theta - theta_expected) > tol)
        throw ConfigError("simulation.initial.theta",
                          "must equal theta_o - theta_r(s_r(0)) = " +
                              std::to_string(theta_expected));
    if (!check_existence(path.curvature_extended(initial.s_r), initial.z, guards.d_min))
        throw ConfigError("simulation.initial",
                          "existence condition 1 - kappa_r*z > d_min fails at the initial state");
}

RunResult run(const ScenarioConfig& config) {
    ScenarioConfig cfg = config;
    cfg.validate_and_resolve();

    const Integrator integ(cfg);
    StateVec y = pack(cfg.initial);
    const double L = cfg.path.length();

    RunResult result;
    result.status = RunStatus::TimedOut;
    result.samples.reserve(static_cast<std::size_t>(cfg.t_max / cfg.dt) + 2);
    double raw = std::abs(cfg.initial.z);

    if (y[iSr] >= L) {
        result.status = RunStatus::Completed;
        result.max_error_raw = raw;
        return result;
    }

    long step_index = 0;
    double t = 0.0;
    while (t < cfg.t_max) {
        StateVec next;
        try {
            next = integ.rk4_step(y, cfg.dt);
            integ.check_guards(next);
        } catch (const GuardTrip& trip) {
            result.status = trip.status;
            result.termination_reason = trip.reason;
            break;
        }
        y = next;
        ++step_index;
        t = static_cast<double>(step_index) * cfg.dt;
        result.samples.push_back(make_sample(t, y, integ.evaluate_inputs(y)));
        raw = std::max(raw, std::abs(y[iZ]));
        if (y[iSr] >= L) {
            result.status = RunStatus::Completed;
            break;
        }
    }

    result.max_error_raw = raw;
    if (result.status != RunStatus::Diverged) {
        bool qualifies = false;
        for (const auto& s : result.samples)
            if (s.plant_frenet.s_r >= cfg.skip_arclength) { qualifies = true; break; }
        if (qualifies) result.max_error = max_following_error(result, cfg.skip_arclength);
    }
    return result;
}

std::optional<double> max_following_error(const RunResult& result, double skip_arclength) {
    if (result.status == RunStatus::Diverged) return std::nullopt;
    double best = 0.0;
    bool any = false;
    for (const auto& s : result.samples) {
        if (s.plant_frenet.s_r >= skip_arclength) {
            best = any ? std::max(best, std::abs(s.plant_frenet.z)) : std::abs(s.plant_frenet.z);
            any = true;
        }
    }
    if (!any)
        throw std::invalid_argument(
            "no samples with s_r >= " + std::to_string(skip_arclength) +
            "; use a smaller skip arc length");
    return best;
}

SweepResult sweep(const ScenarioConfig& base, const std::vector<double>& c_values) {
    if (c_values.empty())
        throw ConfigError("c_values", "at least one C value is required");

    std::vector<double> cs = c_values;
    std::sort(cs.begin(), cs.end());

    SweepResult result;
    result.rows.reserve(cs.size());
    for (double c : cs) {
        SweepRow row;
        row.c = c;
        row.c_over_cm = c / base.controller.c_nominal;

        auto run_mode = [&](ControlMode mode, RunStatus& status, std::optional<double>& error) {
            ScenarioConfig cfg = base;
            cfg.plant.c = c;
            cfg.controller.mode = mode;
            try {
                const RunResult r = run(cfg);
                status = r.status;
                if (r.status == RunStatus::Completed) error = r.max_error;
            } catch (const std::exception&) {
                status = RunStatus::Singular; // row captured, sweep continues
            }
        };
        // The baseline column is the nominal tracking law fed back from the
        // plant state (no model-error compensation); the proposed column
        // adds the compensator on top of the model feedforward.
        run_mode(ControlMode::DirectFeedback, row.conventional_status, row.conventional_error);
        run_mode(ControlMode::Mec, row.proposed_status, row.proposed_error);
        result.rows.push_back(row);
    }
    return result;
}

} // namespace pathmec
