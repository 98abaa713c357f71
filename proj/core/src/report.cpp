#include "pathmec/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace pathmec {

namespace {

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

// shortest representation that round-trips exactly
std::string compact(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string table_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string cell(RunStatus status, const std::optional<double>& error, bool pretty) {
    if (status == RunStatus::Completed && error)
        return pretty ? table_number(*error) : compact(*error);
    return to_string(status);
}

} // namespace

const char* const kTimeseriesHeader =
    "t,s_r,z,theta,beta,psi_dot,delta,z_M,theta_M,u,u_M,u_c,kappa,kappa_r,xi,eta,theta_o";

void write_timeseries_csv(std::ostream& os, const RunResult& result) {
    os << kTimeseriesHeader << "\n";
    for (const auto& s : result.samples) {
        os << sci(s.t) << ',' << sci(s.plant_frenet.s_r) << ',' << sci(s.plant_frenet.z) << ','
           << sci(s.plant_frenet.theta) << ',' << sci(s.plant.beta) << ',' << sci(s.plant.psi_dot)
           << ',' << sci(s.plant.delta) << ',' << sci(s.model_frenet.z) << ','
           << sci(s.model_frenet.theta) << ',' << sci(s.u) << ',' << sci(s.u_m) << ','
           << sci(s.u_c) << ',' << sci(s.kappa) << ',' << sci(s.kappa_r) << ',' << sci(s.pose.xi)
           << ',' << sci(s.pose.eta) << ',' << sci(s.pose.theta_o) << "\n";
    }
}

void write_summary_json(std::ostream& os, const RunResult& result,
                        const std::string& config_echo_json, double wall_seconds) {
    nlohmann::json doc;
    doc["status"] = to_string(result.status);
    if (result.max_error)
        doc["max_error"] = *result.max_error;
    else
        doc["max_error"] = to_string(result.status);
    doc["max_error_raw"] = result.max_error_raw;
    doc["final_s_r"] =
        result.samples.empty() ? 0.0 : result.samples.back().plant_frenet.s_r;
    doc["wall_seconds"] = wall_seconds;
    if (!result.termination_reason.empty())
        doc["termination_reason"] = result.termination_reason;
    doc["config"] = nlohmann::json::parse(config_echo_json);
    os << doc.dump(2) << "\n";
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "C,C_over_CM,conventional_max_error,proposed_max_error\n";
    for (const auto& row : sweep.rows) {
        os << compact(row.c) << ',' << compact(row.c_over_cm) << ','
           << cell(row.conventional_status, row.conventional_error, false) << ','
           << cell(row.proposed_status, row.proposed_error, false) << "\n";
    }
}

void write_sweep_markdown(std::ostream& os, const SweepResult& sweep) {
    os << "| C | C/C_M | Conventional [m] | Proposed [m] |\n";
    os << "|---|-------|------------------|--------------|\n";
    for (const auto& row : sweep.rows) {
        os << "| " << compact(row.c) << " | " << compact(row.c_over_cm) << " | "
           << cell(row.conventional_status, row.conventional_error, true) << " | "
           << cell(row.proposed_status, row.proposed_error, true) << " |\n";
    }
}

void write_path_csv(std::ostream& os, const std::vector<PathPoint>& points,
                    const TargetPath& path) {
    os << "s,xi_r,eta_r,theta_r,kappa_r\n";
    for (const auto& p : points) {
        os << sci(p.s) << ',' << sci(p.xi_r) << ',' << sci(p.eta_r) << ',' << sci(p.theta_r)
           << ',' << sci(path.curvature(std::min(p.s, path.length()))) << "\n";
    }
}

namespace {

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

const char* mode_color(ControlMode mode) {
    switch (mode) {
        case ControlMode::Feedforward: return "#d62728"; // red: conventional
        case ControlMode::Mec: return "#1f77b4";         // blue: proposed
        case ControlMode::DirectFeedback: return "#2ca02c";
    }
    return "#1f77b4";
}

std::string fmt1(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.1f", x);
    return buf;
}

// Simple line chart: world coordinates mapped into a fixed viewport,
// y up. Decimation keeps point counts plot-sized without touching any
// numerical output.
class SvgCanvas {
public:
    SvgCanvas(std::ostream& os, Bounds b, const char* x_label, const char* y_label)
        : os_(os), b_(b) {
        const double spanx = std::max(b_.xmax - b_.xmin, 1e-9);
        const double spany = std::max(b_.ymax - b_.ymin, 1e-9);
        const double margin_x = 0.05 * spanx;
        const double margin_y = 0.05 * spany;
        b_.xmin -= margin_x;
        b_.xmax += margin_x;
        b_.ymin -= margin_y;
        b_.ymax += margin_y;
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
            << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
        os_ << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" fill=\"white\"/>\n";
        os_ << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kWidth - 2 * kPad
            << "\" height=\"" << kHeight - 2 * kPad
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
        os_ << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label
            << " [" << fmt1(b_.xmin) << ", " << fmt1(b_.xmax) << "]</text>\n";
        os_ << "<text x=\"14\" y=\"" << kHeight / 2
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 14 "
            << kHeight / 2 << ")\">" << y_label << " [" << fmt1(b_.ymin) << ", " << fmt1(b_.ymax)
            << "]</text>\n";
    }

    template <typename Range, typename GetX, typename GetY>
    void polyline(const Range& range, GetX get_x, GetY get_y, const char* color, bool dashed) {
        const std::size_t n = range.size();
        const std::size_t stride = std::max<std::size_t>(1, n / kMaxPoints);
        os_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (dashed) os_ << " stroke-dasharray=\"6 4\"";
        os_ << " points=\"";
        for (std::size_t i = 0; i < n; i += stride) emit(get_x(range[i]), get_y(range[i]));
        if (n > 0 && (n - 1) % stride != 0)
            emit(get_x(range[n - 1]), get_y(range[n - 1]));
        os_ << "\"/>\n";
    }

    void finish() { os_ << "</svg>\n"; }

private:
    void emit(double x, double y) {
        const double px = kPad + (x - b_.xmin) / (b_.xmax - b_.xmin) * (kWidth - 2 * kPad);
        const double py = kHeight - kPad - (y - b_.ymin) / (b_.ymax - b_.ymin) * (kHeight - 2 * kPad);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
        os_ << buf;
    }

    static constexpr int kWidth = 720;
    static constexpr int kHeight = 540;
    static constexpr int kPad = 40;
    static constexpr std::size_t kMaxPoints = 4000;

    std::ostream& os_;
    Bounds b_;
};

} // namespace

void write_trajectory_svg(std::ostream& os, const std::vector<PathPoint>& path_points,
                          const RunResult& result, ControlMode mode) {
    Bounds b;
    for (const auto& p : path_points) b.add(p.xi_r, p.eta_r);
    for (const auto& s : result.samples) b.add(s.pose.xi, s.pose.eta);
    SvgCanvas canvas(os, b, "xi [m]", "eta [m]");
    canvas.polyline(path_points, [](const PathPoint& p) { return p.xi_r; },
                    [](const PathPoint& p) { return p.eta_r; }, "#444444", true);
    canvas.polyline(result.samples, [](const SimSample& s) { return s.pose.xi; },
                    [](const SimSample& s) { return s.pose.eta; }, mode_color(mode), false);
    canvas.finish();
}

void write_error_svg(std::ostream& os, const RunResult& result, ControlMode mode) {
    Bounds b;
    b.add(0.0, 0.0);
    for (const auto& s : result.samples) b.add(s.plant_frenet.s_r, std::abs(s.plant_frenet.z));
    SvgCanvas canvas(os, b, "s_r [m]", "|z| [m]");
    canvas.polyline(result.samples, [](const SimSample& s) { return s.plant_frenet.s_r; },
                    [](const SimSample& s) { return std::abs(s.plant_frenet.z); },
                    mode_color(mode), false);
    canvas.finish();
}

void write_path_svg(std::ostream& os, const std::vector<PathPoint>& points) {
    Bounds b;
    for (const auto& p : points) b.add(p.xi_r, p.eta_r);
    SvgCanvas canvas(os, b, "xi [m]", "eta [m]");
    canvas.polyline(points, [](const PathPoint& p) { return p.xi_r; },
                    [](const PathPoint& p) { return p.eta_r; }, "#444444", true);
    canvas.finish();
}

} // namespace pathmec
