#include "pathmec/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pathmec/errors.hpp"

namespace pathmec {

double CurvatureSegment::curvature(double s) const {
    switch (kind) {
        case SegmentKind::Zero:
            return 0.0;
        case SegmentKind::RaisedCosine:
            return c * (1.0 - std::cos(omega * s + phi));
        case SegmentKind::Sine:
            return c * std::sin(omega * s + phi);
        case SegmentKind::Constant:
            return c;
    }
    return 0.0;
}

double CurvatureSegment::curvature_rate(double s) const {
    switch (kind) {
        case SegmentKind::Zero:
        case SegmentKind::Constant:
            return 0.0;
        case SegmentKind::RaisedCosine:
            return c * omega * std::sin(omega * s + phi);
        case SegmentKind::Sine:
            return c * omega * std::cos(omega * s + phi);
    }
    return 0.0;
}

TargetPath::TargetPath(std::vector<CurvatureSegment> segments, PathPoint origin)
    : segments_(std::move(segments)), origin_(origin) {
    if (segments_.empty())
        throw ConfigError("path.segments", "at least one segment is required");
    if (segments_.front().s_start != 0.0)
        throw ConfigError("path.segments", "first segment must start at s = 0");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& seg = segments_[i];
        if (!(seg.s_start < seg.s_end))
            throw ConfigError("path.segments[" + std::to_string(i) + "]",
                              "requires s_start < s_end");
        if (i > 0 && segments_[i - 1].s_end != seg.s_start)
            throw ConfigError("path.segments[" + std::to_string(i) + "]",
                              "must start exactly where the previous segment ends "
                              "(no gaps or overlaps)");
    }
    length_ = segments_.back().s_end;
    origin_.s = 0.0;
}

const CurvatureSegment& TargetPath::segment_at(double s) const noexcept {
    // Last segment whose s_start <= s; at a breakpoint the right segment wins.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), s,
                               [](double value, const CurvatureSegment& seg) {
                                   return value < seg.s_start;
                               });
    if (it == segments_.begin()) return segments_.front();
    return *(it - 1);
}

namespace {
[[noreturn]] void throw_domain(double s, double length) {
    throw std::domain_error("arc length s = " + std::to_string(s) +
                            " outside path domain [0, " + std::to_string(length) + "]");
}
} // namespace

double TargetPath::curvature(double s) const {
    if (s < 0.0 || s > length_) throw_domain(s, length_);
    return segment_at(s).curvature(s);
}

double TargetPath::curvature_rate(double s) const {
    if (s < 0.0 || s > length_) throw_domain(s, length_);
    return segment_at(s).curvature_rate(s);
}

double TargetPath::curvature_extended(double s) const noexcept {
    return segment_at(s).curvature(s);
}

double TargetPath::curvature_rate_extended(double s) const noexcept {
    return segment_at(s).curvature_rate(s);
}

namespace {

// One RK4 step of (theta', xi', eta') = (kappa_r, cos theta, sin theta)
// over [s0, s1]. All stages evaluate the segment's analytic formula, so a
// step whose endpoint touches a breakpoint cannot sample the neighbouring
// segment's curvature.
void advance_point(const CurvatureSegment& seg, PathPoint& p, double s0, double s1) {
    const double h = s1 - s0;
    if (h <= 0.0) return;
    const double k1 = seg.curvature(s0);
    const double k23 = seg.curvature(0.5 * (s0 + s1));
    const double k4 = seg.curvature(s1);

    const double t1 = p.theta_r;
    const double t2 = p.theta_r + 0.5 * h * k1;
    const double t3 = p.theta_r + 0.5 * h * k23;
    const double t4 = p.theta_r + h * k23;
    p.xi_r += h / 6.0 * (std::cos(t1) + 2.0 * std::cos(t2) + 2.0 * std::cos(t3) + std::cos(t4));
    p.eta_r += h / 6.0 * (std::sin(t1) + 2.0 * std::sin(t2) + 2.0 * std::sin(t3) + std::sin(t4));
    p.theta_r += h / 6.0 * (k1 + 4.0 * k23 + k4);
}

// Integrate [s0, s1] splitting at interior segment boundaries; each piece
// uses the formula of the segment containing its midpoint.
void integrate_point(const TargetPath& path, PathPoint& p, double s0, double s1) {
    auto piece = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const CurvatureSegment* owner = &path.segments().back();
        for (const auto& seg : path.segments())
            if (mid < seg.s_end || &seg == &path.segments().back()) { owner = &seg; break; }
        advance_point(*owner, p, a, b);
    };
    double cur = s0;
    for (const auto& seg : path.segments()) {
        if (seg.s_start > cur && seg.s_start < s1) {
            piece(cur, seg.s_start);
            cur = seg.s_start;
        }
    }
    piece(cur, s1);
}

} // namespace

std::vector<PathPoint> TargetPath::reconstruct(double ds) const {
    if (!(ds > 0.0)) throw ConfigError("ds", "reconstruction step must be > 0");

    PathPoint point = origin_;
    point.s = 0.0;

    std::vector<PathPoint> out;
    const auto n = static_cast<std::size_t>(std::floor(length_ / ds + 1e-9));
    out.reserve(n + 2);
    out.push_back(point);
    double prev = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double target = std::min(static_cast<double>(i) * ds, length_);
        integrate_point(*this, point, prev, target);
        point.s = target;
        out.push_back(point);
        prev = target;
    }
    if (prev < length_ - 1e-9 * std::max(1.0, length_)) {
        integrate_point(*this, point, prev, length_);
        point.s = length_;
        out.push_back(point);
    }
    return out;
}

PathPoint TargetPath::point_at(double s, double ds) const {
    if (s < 0.0 || s > length_) throw_domain(s, length_);
    if (!(ds > 0.0)) throw ConfigError("ds", "reconstruction step must be > 0");
    PathPoint point = origin_;
    point.s = 0.0;
    double cur = 0.0;
    while (cur < s) {
        const double target = std::min(cur + ds, s);
        integrate_point(*this, point, cur, target);
        cur = target;
    }
    point.s = s;
    return point;
}

TargetPath builtin_path(BuiltinPath id) {
    const PathPoint anchor{0.0, 0.0, -3.0, 0.0};
    switch (id) {
        case BuiltinPath::Path1:
            return TargetPath(
                {
                    {0.0, 12.0, SegmentKind::Zero, 0.0, 0.0, 0.0},
                    {12.0, 150.0, SegmentKind::RaisedCosine, 0.037, 0.15, -1.8},
                },
                anchor);
        case BuiltinPath::Path2:
            return TargetPath(
                {
                    {0.0, 10.0, SegmentKind::Zero, 0.0, 0.0, 0.0},
                    {10.0, 207.0, SegmentKind::Sine, 0.1, 0.06, -0.2},
                },
                anchor);
    }
    throw ConfigError("path.builtin", "unknown builtin path id");
}

} // namespace pathmec
