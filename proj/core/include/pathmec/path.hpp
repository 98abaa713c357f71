#pragma once

#include <vector>

namespace pathmec {

/// Kind of analytic curvature law on one arc-length interval.
enum class SegmentKind {
    Zero,         ///< kappa_r(s) = 0
    RaisedCosine, ///< kappa_r(s) = c * (1 - cos(omega*s + phi))
    Sine,         ///< kappa_r(s) = c * sin(omega*s + phi)
    Constant,     ///< kappa_r(s) = c
};

/// One piece of a piecewise-analytic curvature profile.
struct CurvatureSegment {
    double s_start = 0.0; ///< [m]
    double s_end = 0.0;   ///< [m], must exceed s_start
    SegmentKind kind = SegmentKind::Zero;
    double c = 0.0;     ///< amplitude [1/m]
    double omega = 0.0; ///< spatial frequency [rad/m]
    double phi = 0.0;   ///< phase [rad]

    double curvature(double s) const;
    double curvature_rate(double s) const; ///< d(kappa_r)/ds, closed form
};

/// Sample of the reconstructed path in the inertial frame.
struct PathPoint {
    double s = 0.0;       ///< arc length [m]
    double xi_r = 0.0;    ///< inertial x [m]
    double eta_r = 0.0;   ///< inertial y [m]
    double theta_r = 0.0; ///< tangent orientation [rad]
};

/// Target path as a curvature profile kappa_r(s) over [0, L], anchored in
/// the inertial frame by the pose of its first point. Immutable after
/// construction; all queries are pure.
class TargetPath {
public:
    /// Segments must tile [0, L] exactly: the first starts at 0, each
    /// next starts where the previous ends. Throws ConfigError otherwise.
    TargetPath(std::vector<CurvatureSegment> segments, PathPoint origin);

    double length() const noexcept { return length_; }
    const PathPoint& origin() const noexcept { return origin_; }
    const std::vector<CurvatureSegment>& segments() const noexcept { return segments_; }

    /// kappa_r(s) for s in [0, L]. At an interior breakpoint the right
    /// segment's value is used. Throws std::domain_error outside [0, L].
    double curvature(double s) const;

    /// d(kappa_r)/ds for s in [0, L]; right-derivative at breakpoints.
    /// A jump in kappa_r itself contributes no impulsive term.
    double curvature_rate(double s) const;

    /// Like curvature(), but extrapolates the boundary segment's formula
    /// outside [0, L]. The simulator needs this: reference points may step
    /// a fraction of a meter past the endpoint inside the final integration
    /// step, and the nominal model can run ahead of the plant.
    double curvature_extended(double s) const noexcept;
    double curvature_rate_extended(double s) const noexcept;

    /// Inertial-frame polyline sampled at s = 0, ds, 2ds, ..., L.
    /// Integrates theta_r' = kappa_r, xi_r' = cos(theta_r),
    /// eta_r' = sin(theta_r) with fixed-step 4th-order Runge-Kutta,
    /// splitting steps at segment boundaries.
    std::vector<PathPoint> reconstruct(double ds) const;

    /// Single reconstructed point at arc length s (same integration as
    /// reconstruct, stopping at s).
    PathPoint point_at(double s, double ds = 0.01) const;

private:
    const CurvatureSegment& segment_at(double s) const noexcept;

    std::vector<CurvatureSegment> segments_;
    double length_ = 0.0;
    PathPoint origin_;
};

enum class BuiltinPath { Path1 = 1, Path2 = 2 };

/// The two benchmark paths. Path1: straight 12 m, then a raised-cosine
/// curvature 0.037*(1 - cos(0.15 s - 1.8)) up to L = 150 m (square-like
/// closed shape). Path2: straight 10 m, then 0.1*sin(0.06 s - 0.2) up to
/// L = 207 m (meandering shape). Both anchor p_r(0) = (0, -3) with
/// theta_r(0) = 0 so the standard initial condition sits 3 m to the
/// path's left with the orthogonality condition satisfied.
TargetPath builtin_path(BuiltinPath id);

} // namespace pathmec
