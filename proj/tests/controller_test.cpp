#include "pathmec/controller.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "pathmec/errors.hpp"
#include "pathmec/simulation.hpp"
#include "support.hpp"

using namespace pathmec;
using testsupport::paper_scenario;
using testsupport::straight_path;

namespace {

ControlSnapshot zero_snapshot() { return ControlSnapshot{}; }

} // namespace

TEST(ControllerTest, GainConstruction) {
    const ControllerGains g = default_gains();
    EXPECT_DOUBLE_EQ(g.alpha1, 400.0);
    EXPECT_DOUBLE_EQ(g.alpha2, 500.0);
    EXPECT_DOUBLE_EQ(g.alpha3, 240.0);
    // feedback gains are five times the Hurwitz coefficients
    EXPECT_DOUBLE_EQ(g.k1, 5.0 * g.alpha1);
    EXPECT_DOUBLE_EQ(g.k2, 5.0 * g.alpha2);
    EXPECT_DOUBLE_EQ(g.k3, 5.0 * g.alpha3);
}

TEST(ControllerTest, HurwitzConditionEnforced) {
    EXPECT_THROW(ControllerGains(-1.0, 500.0, 240.0, 0, 0, 0), ConfigError);
    EXPECT_THROW(ControllerGains(400.0, 500.0, -240.0, 0, 0, 0), ConfigError);
    // Routh: a1*a2 > a3
    EXPECT_THROW(ControllerGains(1.0, 1.0, 2.0, 0, 0, 0), ConfigError);
    EXPECT_NO_THROW(ControllerGains(1.0, 3.0, 2.0, 0, 0, 0));
}

TEST(ControllerTest, UZeroVanishesAtRest) {
    const VehicleParams p;
    EXPECT_DOUBLE_EQ(u_zero(default_gains(), p, zero_snapshot()), 0.0);
}

TEST(ControllerTest, UZeroCrossTrackTermOnly) {
    // only -alpha3 z / (a13 cos theta) survives: -240 * 1 / 30.1
    const VehicleParams p;
    ControlSnapshot s = zero_snapshot();
    s.z = 1.0;
    EXPECT_NEAR(u_zero(default_gains(), p, s), -240.0 / 30.1, 1e-12);
    EXPECT_NEAR(u_zero(default_gains(), p, s), -7.9734, 1e-4);
}

TEST(ControllerTest, UZeroGuards) {
    const VehicleParams p;
    ControlSnapshot s = zero_snapshot();
    s.theta = 1.49; // beyond 85 deg
    EXPECT_THROW(u_zero(default_gains(), p, s), SingularityError);
    s = zero_snapshot();
    s.kappa_r = 0.1;
    s.z = 10.0; // existence denominator 0
    EXPECT_THROW(u_zero(default_gains(), p, s), SingularityError);
}

TEST(ControllerTest, UIdealAddsResistanceTerm) {
    const VehicleParams p;
    ControlSnapshot s = zero_snapshot();
    s.delta = 0.1;
    // u0 contributes a13*delta terms too; isolate the resistance term by
    // differencing against c = 0
    const double base = u_ideal(default_gains(), p, s, 0.0);
    EXPECT_NEAR(u_ideal(default_gains(), p, s, 200.0) - base, 200.0 * 3.0 * 0.1, 1e-9);
    EXPECT_DOUBLE_EQ(base, u_zero(default_gains(), p, s));

    ControlSnapshot sz = zero_snapshot();
    sz.z = 1.0; // delta = 0: resistance term vanishes
    EXPECT_NEAR(u_ideal(default_gains(), p, sz, 200.0), -240.0 / 30.1, 1e-12);
}

TEST(ControllerTest, CompensationVanishesForMatchedModel) {
    const VehicleParams p;
    ControlSnapshot s = zero_snapshot();
    s.beta = 0.01;
    s.psi_dot = -0.2;
    s.delta = 0.05;
    s.theta = 0.3;
    s.z = 1.5;
    s.kappa_r = 0.05;
    s.kappa_r_dot = 0.001;
    s.beta_dot = 0.2;
    s.psi_ddot = 0.1;
    EXPECT_DOUBLE_EQ(u_compensation(default_gains(), p, s, s), 0.0);
}

TEST(ControllerTest, CompensationCrossTrackTerm) {
    // z_M = 0 vs z = 0.1, everything else equal: k3 term only
    const VehicleParams p;
    ControlSnapshot model = zero_snapshot();
    ControlSnapshot plant = zero_snapshot();
    plant.z = 0.1;
    const double expected = 1200.0 * (0.0 - 0.1) / 30.1;
    EXPECT_NEAR(u_compensation(default_gains(), p, model, plant), expected, 1e-12);
    EXPECT_NEAR(expected, -3.9867, 1e-4);
}

TEST(ControllerTest, CompensationHeadingTerm) {
    // theta_M = 0 vs theta = 0.1: k2 term only. Oracle: k2 v (tan 0 - tan 0.1)/a13.
    const VehicleParams p;
    ControlSnapshot model = zero_snapshot();
    ControlSnapshot plant = zero_snapshot();
    plant.theta = 0.1;
    const double expected = 2500.0 * 3.0 * (0.0 - std::tan(0.1)) / 30.1;
    EXPECT_NEAR(u_compensation(default_gains(), p, model, plant), expected, 1e-9);
    EXPECT_NEAR(expected, -25.0003, 5e-4);
}

TEST(ControllerTest, TotalInput) {
    EXPECT_DOUBLE_EQ(total_input(2.0, -0.5, ControlMode::Mec), 1.5);
    EXPECT_DOUBLE_EQ(total_input(2.0, -0.5, ControlMode::Feedforward), 2.0);
    EXPECT_DOUBLE_EQ(total_input(2.0, 0.0, ControlMode::Mec),
                     total_input(2.0, 0.0, ControlMode::Feedforward));
}

TEST(ControllerTest, ModelLoopInput) {
    const VehicleParams p;
    EXPECT_DOUBLE_EQ(model_loop_input(default_gains(), p, zero_snapshot(), 200.0), 0.0);
    ControlSnapshot s = zero_snapshot();
    s.z = 3.0;
    EXPECT_NEAR(model_loop_input(default_gains(), p, s, 200.0), -240.0 * 3.0 / 30.1, 1e-12);
    EXPECT_NEAR(model_loop_input(default_gains(), p, s, 200.0), -23.920, 1e-3);
}

TEST(ControllerTest, MakeSnapshotDerivativeRows) {
    const VehicleParams p;
    const TargetPath path = builtin_path(BuiltinPath::Path2);
    const VehicleState x{0.02, 0.1, -0.03};
    const FrenetState f{0.1, 20.0, 0.5};
    const ControlSnapshot s = make_snapshot(p, path, x, f);
    const VehicleState d = plant_derivative(p, x, 0.0);
    EXPECT_DOUBLE_EQ(s.beta_dot, d.beta);
    EXPECT_DOUBLE_EQ(s.psi_ddot, d.psi_dot);
    EXPECT_DOUBLE_EQ(s.kappa_r, path.curvature(20.0));
    // kappa_r_dot = dkappa/ds * s_r' with s_r' = v cos(theta)/(1 - kappa_r z)
    const double s_r_dot = 3.0 * std::cos(0.1) / (1.0 - s.kappa_r * 0.5);
    EXPECT_DOUBLE_EQ(s.kappa_r_dot, path.curvature_rate(20.0) * s_r_dot);
}

TEST(ControllerTest, MatchedModelNullityAlongRun) {
    // C = C_M with identical initializations: u_c stays exactly zero and
    // the plant/model trajectories coincide to integrator determinism
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path1, 200.0, ControlMode::Mec);
    cfg.t_max = 5.0;
    const RunResult r = run(cfg);
    ASSERT_FALSE(r.samples.empty());
    for (const auto& s : r.samples) {
        ASSERT_EQ(s.u_c, 0.0);
        ASSERT_EQ(s.u, s.u_m);
        ASSERT_LT(std::abs(s.plant_frenet.z - s.model_frenet.z), 1e-9);
        ASSERT_LT(std::abs(s.plant.delta - s.model.delta), 1e-9);
    }
}

TEST(ControllerTest, LinearizedErrorDynamicsContract) {
    // With C known exactly, the numerically differentiated signal
    // z''' + a1 z'' + a2 z' + a3 z vanishes along the run. The first 50 ms
    // are excluded: the commanded transient puts a |lambda| ~ 400 1/s mode
    // into z whose finite-difference truncation at dt = 1e-3 dominates
    // until it has decayed.
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path1, 200.0, ControlMode::Mec);
    const RunResult r = run(cfg);
    ASSERT_EQ(r.status, RunStatus::Completed);

    const double dt = cfg.dt;
    const auto& samples = r.samples;
    double max_zdd = 0.0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double zdd = (samples[i + 1].plant_frenet.z - 2.0 * samples[i].plant_frenet.z +
                            samples[i - 1].plant_frenet.z) /
                           (dt * dt);
        max_zdd = std::max(max_zdd, std::abs(zdd));
    }
    const double bound = 400.0 * max_zdd * 1e-3;

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < samples.size(); ++i) {
        if (samples[i].t < 0.05) continue;
        const double z_m2 = samples[i - 2].plant_frenet.z;
        const double z_m1 = samples[i - 1].plant_frenet.z;
        const double z_0 = samples[i].plant_frenet.z;
        const double z_p1 = samples[i + 1].plant_frenet.z;
        const double z_p2 = samples[i + 2].plant_frenet.z;
        const double z3 = (z_p2 - 2.0 * z_p1 + 2.0 * z_m1 - z_m2) / (2.0 * dt * dt * dt);
        const double z2 = (z_p1 - 2.0 * z_0 + z_m1) / (dt * dt);
        const double z1 = (z_p1 - z_m1) / (2.0 * dt);
        worst = std::max(worst, std::abs(z3 + 400.0 * z2 + 500.0 * z1 + 240.0 * z_0));
    }
    EXPECT_LT(worst, bound);
}

TEST(ControllerTest, StraightPathAnalyticOracle) {
    // z(t) must match the mode superposition of s^3 + 400 s^2 + 500 s + 240
    // with (z, z', z'')(0) = (3, 0, 0), roots from an independent finder.
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path1, 200.0, ControlMode::Mec);
    cfg.path = straight_path(60.0);
    cfg.builtin_path_id.reset();
    cfg.t_max = 10.0;
    const RunResult r = run(cfg);
    ASSERT_GE(r.samples.size(), 9999u);

    const auto roots = testsupport::cubic_roots(400.0, 500.0, 240.0);
    const testsupport::ModeSuperposition oracle(roots, 3.0, 0.0, 0.0);
    double worst = 0.0;
    for (const auto& s : r.samples) {
        if (s.t > 10.0 + 1e-9) break;
        worst = std::max(worst, std::abs(s.plant_frenet.z - oracle(s.t)));
    }
    EXPECT_LT(worst, 1e-3);
}
