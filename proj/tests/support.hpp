// Shared test helpers: independent oracles (cubic roots by Durand-Kerner,
// mode-superposition solution of the prescribed error dynamics) and the
// offline point-to-polyline distance used by the closure checks. These stay
// independent of the library's own integration path.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pathmec/path.hpp"
#include "pathmec/scenario.hpp"
#include "pathmec/simulation.hpp"

namespace testsupport {

// Roots of x^3 + a1 x^2 + a2 x + a3 by Durand-Kerner iteration.
inline std::vector<std::complex<double>> cubic_roots(double a1, double a2, double a3) {
    using C = std::complex<double>;
    auto p = [&](C x) { return ((x + a1) * x + a2) * x + a3; };
    std::vector<C> r = {C(1.0, 0.0), C(0.4, 0.9), std::pow(C(0.4, 0.9), 2)};
    // scale the seeds to the coefficient magnitude so convergence is quick
    const double scale = std::max({1.0, std::abs(a1), std::sqrt(std::abs(a2)),
                                   std::cbrt(std::abs(a3))});
    for (auto& x : r) x *= scale;
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < 3; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < 3; ++j)
                if (j != i) denom *= r[i] - r[j];
            const C delta = p(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14 * scale) break;
    }
    return r;
}

// z(t) = Re(sum c_i exp(lambda_i t)) with (z, z', z'')(0) given: solves the
// 3x3 Vandermonde system by Gaussian elimination in complex arithmetic.
class ModeSuperposition {
public:
    ModeSuperposition(const std::vector<std::complex<double>>& roots, double z0, double zd0,
                      double zdd0)
        : roots_(roots) {
        using C = std::complex<double>;
        C a[3][4];
        for (int j = 0; j < 3; ++j) {
            a[0][j] = C(1.0, 0.0);
            a[1][j] = roots_[j];
            a[2][j] = roots_[j] * roots_[j];
        }
        a[0][3] = z0;
        a[1][3] = zd0;
        a[2][3] = zdd0;
        for (int col = 0; col < 3; ++col) {
            int pivot = col;
            for (int row = col + 1; row < 3; ++row)
                if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
            for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[pivot][j]);
            for (int row = col + 1; row < 3; ++row) {
                const C f = a[row][col] / a[col][col];
                for (int j = col; j < 4; ++j) a[row][j] -= f * a[col][j];
            }
        }
        for (int row = 2; row >= 0; --row) {
            C acc = a[row][3];
            for (int j = row + 1; j < 3; ++j) acc -= a[row][j] * coeff_[j];
            coeff_[row] = acc / a[row][row];
        }
    }

    double operator()(double t) const {
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < 3; ++i) acc += coeff_[i] * std::exp(roots_[i] * t);
        return acc.real();
    }

private:
    std::vector<std::complex<double>> roots_;
    std::complex<double> coeff_[3];
};

// Distance from (x, y) to the polyline restricted to a window of arc length
// around s_hint. The window keeps self-approaching paths from matching a
// different branch; the orthogonal foot lies at s_hint by construction.
inline double polyline_local_distance(const std::vector<pathmec::PathPoint>& poly, double ds,
                                      double s_hint, double x, double y,
                                      double window = 1.0) {
    if (poly.size() < 2) throw std::invalid_argument("polyline too short");
    const auto n = static_cast<long>(poly.size());
    const long center = std::clamp(static_cast<long>(std::llround(s_hint / ds)), 0L, n - 1);
    const long w = std::max(2L, static_cast<long>(std::llround(window / ds)));
    const long lo = std::max(0L, center - w);
    const long hi = std::min(n - 2, center + w);
    double best = std::numeric_limits<double>::infinity();
    for (long i = lo; i <= hi; ++i) {
        const double ax = poly[i].xi_r, ay = poly[i].eta_r;
        const double bx = poly[i + 1].xi_r, by = poly[i + 1].eta_r;
        const double vx = bx - ax, vy = by - ay;
        const double len2 = vx * vx + vy * vy;
        double u = len2 > 0.0 ? ((x - ax) * vx + (y - ay) * vy) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        const double dx = x - (ax + u * vx), dy = y - (ay + u * vy);
        best = std::min(best, std::hypot(dx, dy));
    }
    return best;
}

// Sign of q' . e2'(s_r), interpolated on the reconstructed polyline.
inline double side_sign(const std::vector<pathmec::PathPoint>& poly, double ds, double s_r,
                        double x, double y) {
    const auto n = static_cast<long>(poly.size());
    const long i = std::clamp(static_cast<long>(std::llround(s_r / ds)), 0L, n - 1);
    const auto& p = poly[i];
    const double qx = x - p.xi_r;
    const double qy = y - p.eta_r;
    const double dot = -qx * std::sin(p.theta_r) + qy * std::cos(p.theta_r);
    return dot >= 0.0 ? 1.0 : -1.0;
}

// Benchmark scenario with the given true C and controller mode.
inline pathmec::ScenarioConfig paper_scenario(pathmec::BuiltinPath id, double c_true,
                                              pathmec::ControlMode mode) {
    pathmec::ScenarioConfig cfg = pathmec::default_scenario(id).config;
    cfg.plant.c = c_true;
    cfg.controller.mode = mode;
    return cfg;
}

// Straight path of the given length anchored so the default initial state
// (plant at the origin, z = 3) is geometrically consistent.
inline pathmec::TargetPath straight_path(double length) {
    return pathmec::TargetPath(
        {{0.0, length, pathmec::SegmentKind::Zero, 0.0, 0.0, 0.0}},
        pathmec::PathPoint{0.0, 0.0, -3.0, 0.0});
}

} // namespace testsupport
