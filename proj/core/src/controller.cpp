#include "pathmec/controller.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pathmec/errors.hpp"

namespace pathmec {

ControllerGains::ControllerGains(double a1, double a2, double a3,
                                 double k1_, double k2_, double k3_)
    : alpha1(a1), alpha2(a2), alpha3(a3), k1(k1_), k2(k2_), k3(k3_) {
    // Routh condition for s^3 + a1 s^2 + a2 s + a3.
    if (!(alpha1 > 0.0 && alpha3 > 0.0 && alpha1 * alpha2 > alpha3))
        throw ConfigError("controller.alpha",
                          "s^3 + a1 s^2 + a2 s + a3 must be Hurwitz: "
                          "requires a1 > 0, a3 > 0, a1*a2 > a3");
}

ControllerGains default_gains() {
    return ControllerGains(400.0, 500.0, 240.0, 2000.0, 2500.0, 1200.0);
}

namespace {

void check_guards(const ControlSnapshot& s, const ControlGuards& guards) {
    if (!(std::abs(s.theta) < guards.theta_max))
        throw SingularityError("heading error |theta| = " + std::to_string(std::abs(s.theta)) +
                               " rad at or beyond the guard " + std::to_string(guards.theta_max));
    const double denom = 1.0 - s.kappa_r * s.z;
    if (!(denom > guards.d_min))
        throw SingularityError("existence condition violated in control law: 1 - kappa_r*z = " +
                               std::to_string(denom));
}

// kappa*v^2 written in the states: a11*beta + a12/v*psi_dot + a13*delta.
double curvature_numerator(const VehicleParams& p, const ControlSnapshot& s) {
    return p.a11 * s.beta + p.a12 / p.v * s.psi_dot + p.a13 * s.delta;
}

} // namespace

PathSignal measure_path_signal(const TargetPath& path, double v, const FrenetState& f) {
    PathSignal signal;
    signal.kappa_r = path.curvature_extended(f.s_r);
    const double denom = 1.0 - signal.kappa_r * f.z;
    const double s_r_dot = v * std::cos(f.theta) / denom;
    signal.kappa_r_dot = path.curvature_rate_extended(f.s_r) * s_r_dot;
    return signal;
}

ControlSnapshot make_snapshot(const VehicleParams& nominal, const VehicleState& x,
                              const FrenetState& f, const PathSignal& signal) {
    ControlSnapshot s;
    s.beta = x.beta;
    s.psi_dot = x.psi_dot;
    s.delta = x.delta;
    s.theta = f.theta;
    s.s_r = f.s_r;
    s.z = f.z;
    s.kappa_r = signal.kappa_r;
    s.kappa_r_dot = signal.kappa_r_dot;
    // First two plant rows do not depend on u or C; u = 0 is arbitrary here.
    const VehicleState xd = plant_derivative(nominal, x, 0.0);
    s.beta_dot = xd.beta;
    s.psi_ddot = xd.psi_dot;
    return s;
}

ControlSnapshot make_snapshot(const VehicleParams& nominal, const TargetPath& path,
                              const VehicleState& x, const FrenetState& f) {
    return make_snapshot(nominal, x, f, measure_path_signal(path, nominal.v, f));
}

double u_zero(const ControllerGains& g, const VehicleParams& p,
              const ControlSnapshot& s, const ControlGuards& guards) {
    check_guards(s, guards);

    const double v = p.v;
    const double a13 = p.a13;
    const double cos_th = std::cos(s.theta);
    const double sin_th = std::sin(s.theta);
    const double tan_th = sin_th / cos_th;

    const double A = curvature_numerator(p, s);      // kappa*v^2
    const double D = 1.0 - s.kappa_r * s.z;
    const double B = s.kappa_r * v * v * cos_th / D; // path term of z''/cos(theta)

    return -(g.alpha1 / a13) * (A - B)
           - (g.alpha2 / a13) * v * tan_th
           - (g.alpha3 / a13) * s.z / cos_th
           - (p.a11 * s.beta_dot + p.a12 / v * s.psi_ddot) / a13
           + tan_th / (a13 * v) * A * A
           - 3.0 * s.kappa_r * v * sin_th / (a13 * D) * A
           + s.kappa_r_dot * v * v * cos_th / (a13 * D)
           + s.kappa_r * v * v * cos_th * (s.kappa_r_dot * s.z + 3.0 * s.kappa_r * v * sin_th) /
                 (a13 * D * D);
}

double u_ideal(const ControllerGains& g, const VehicleParams& p,
               const ControlSnapshot& s, double c, const ControlGuards& guards) {
    return u_zero(g, p, s, guards) + c * p.v * s.delta;
}

double u_compensation(const ControllerGains& g, const VehicleParams& p,
                      const ControlSnapshot& model, const ControlSnapshot& plant,
                      const ControlGuards& guards) {
    check_guards(model, guards);
    check_guards(plant, guards);

    const double v = p.v;
    const double a13 = p.a13;

    // Each bracket is that system's z''/cos(theta) expression, evaluated at
    // its own reference point.
    auto bracket = [&](const ControlSnapshot& s) {
        const double D = 1.0 - s.kappa_r * s.z;
        return curvature_numerator(p, s) - s.kappa_r * v * v * std::cos(s.theta) / D;
    };

    // The k1 term carries the opposite sign of the k2/k3 pattern: the
    // feedforward input already contains -alpha1/a13 * bracket(model), so
    // replacing the model bracket by the plant one requires adding
    // +k1/a13 * (bracket_M - bracket_P). Taken with a minus, the k1 channel
    // feeds the z''-like deviation back positively and destabilizes every
    // mismatched run.
    const double tan_m = std::tan(model.theta);
    const double tan_p = std::tan(plant.theta);
    return (g.k1 / a13) * (bracket(model) - bracket(plant))
           + (g.k2 / a13) * (v * tan_m - v * tan_p)
           + (g.k3 / a13) * (model.z / std::cos(model.theta) - plant.z / std::cos(plant.theta));
}

double total_input(double u_m, double u_c, ControlMode mode) {
    return mode == ControlMode::Mec ? u_m + u_c : u_m;
}

double model_loop_input(const ControllerGains& g, const VehicleParams& nominal,
                        const ControlSnapshot& model, double c_nominal,
                        const ControlGuards& guards) {
    return u_ideal(g, nominal, model, c_nominal, guards);
}

} // namespace pathmec
