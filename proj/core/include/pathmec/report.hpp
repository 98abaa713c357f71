#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pathmec/path.hpp"
#include "pathmec/simulation.hpp"

namespace pathmec {

/// Frozen column order of the run time series.
extern const char* const kTimeseriesHeader;

/// Time series of a run, one row per sample, full-precision scientific
/// notation, comma separated, \n line endings.
void write_timeseries_csv(std::ostream& os, const RunResult& result);

/// Run summary: status, metric values, final s_r, wall-clock duration and
/// the fully resolved config echo (config_echo_json must come from
/// scenario_echo_json).
void write_summary_json(std::ostream& os, const RunResult& result,
                        const std::string& config_echo_json, double wall_seconds);

/// Robustness table as CSV: C, C_over_CM, conventional_max_error,
/// proposed_max_error. Rows that did not complete render their status
/// token (e.g. the literal `Diverged`) instead of a number.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

/// Same table as markdown.
void write_sweep_markdown(std::ostream& os, const SweepResult& sweep);

/// Reconstructed path polyline: s, xi_r, eta_r, theta_r, kappa_r.
void write_path_csv(std::ostream& os, const std::vector<PathPoint>& points,
                    const TargetPath& path);

/// Target path (dashed) with the plant trajectory overlaid (solid; red for
/// the conventional feedforward method, blue for the proposed method).
void write_trajectory_svg(std::ostream& os, const std::vector<PathPoint>& path_points,
                          const RunResult& result, ControlMode mode);

/// Following error |z| against reference arc length s_r.
void write_error_svg(std::ostream& os, const RunResult& result, ControlMode mode);

/// Path polyline alone, for the path subcommand.
void write_path_svg(std::ostream& os, const std::vector<PathPoint>& points);

} // namespace pathmec
