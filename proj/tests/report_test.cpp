#include "pathmec/report.hpp"

#include <regex>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pathmec/scenario.hpp"
#include "support.hpp"

using namespace pathmec;
using testsupport::paper_scenario;

namespace {

RunResult short_run() {
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path1, 200.0, ControlMode::Mec);
    cfg.t_max = 0.05;
    return run(cfg);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

} // namespace

TEST(ReportTest, TimeseriesHeaderIsFrozen) {
    // golden column order; downstream tooling depends on it
    EXPECT_STREQ(kTimeseriesHeader,
                 "t,s_r,z,theta,beta,psi_dot,delta,z_M,theta_M,u,u_M,u_c,kappa,kappa_r,"
                 "xi,eta,theta_o");
    std::ostringstream os;
    write_timeseries_csv(os, short_run());
    const auto lines = split_lines(os.str());
    ASSERT_GT(lines.size(), 1u);
    EXPECT_EQ(lines.front(), kTimeseriesHeader);
}

TEST(ReportTest, TimeseriesRowsAreFullPrecisionScientific) {
    std::ostringstream os;
    const RunResult r = short_run();
    write_timeseries_csv(os, r);
    const auto lines = split_lines(os.str());
    ASSERT_EQ(lines.size(), 1u + r.samples.size());
    const std::regex sci(R"(-?\d\.\d{17}e[+-]\d{2,3})");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t commas = 0;
        for (char ch : lines[i])
            if (ch == ',') ++commas;
        ASSERT_EQ(commas, 16u) << lines[i];
        std::string first = lines[i].substr(0, lines[i].find(','));
        EXPECT_TRUE(std::regex_match(first, sci)) << first;
    }
    // no trailing comma, \n endings
    EXPECT_EQ(os.str().find("\r"), std::string::npos);
    EXPECT_EQ(lines.back().back() != ',', true);
}

TEST(ReportTest, SummaryRoundTripReproducesTimeseriesBytes) {
    // the config echo inside summary.json must reproduce the run exactly
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path2, 250.0, ControlMode::Mec);
    cfg.t_max = 0.1;
    const RunResult first = run(cfg);
    std::ostringstream csv1;
    write_timeseries_csv(csv1, first);

    std::ostringstream summary;
    write_summary_json(summary, first, scenario_echo_json(cfg, OutputOptions{}), 0.0);
    const auto doc = nlohmann::json::parse(summary.str());
    const LoadedScenario reloaded = parse_scenario(doc.at("config").dump());

    const RunResult second = run(reloaded.config);
    std::ostringstream csv2;
    write_timeseries_csv(csv2, second);
    EXPECT_EQ(csv1.str(), csv2.str());
}

TEST(ReportTest, SummaryFields) {
    const RunResult r = short_run();
    std::ostringstream os;
    ScenarioConfig cfg = paper_scenario(BuiltinPath::Path1, 200.0, ControlMode::Mec);
    cfg.t_max = 0.05;
    write_summary_json(os, r, scenario_echo_json(cfg, OutputOptions{}), 1.25);
    const auto doc = nlohmann::json::parse(os.str());
    EXPECT_EQ(doc.at("status"), "TimedOut");
    EXPECT_EQ(doc.at("max_error"), "TimedOut"); // no qualifying samples yet
    EXPECT_DOUBLE_EQ(doc.at("max_error_raw").get<double>(), r.max_error_raw);
    EXPECT_DOUBLE_EQ(doc.at("wall_seconds").get<double>(), 1.25);
    EXPECT_TRUE(doc.contains("config"));
    EXPECT_DOUBLE_EQ(doc.at("final_s_r").get<double>(),
                     r.samples.back().plant_frenet.s_r);
}

TEST(ReportTest, SweepCsvRendersDivergedToken) {
    SweepResult sw;
    SweepRow row;
    row.c = 100.0;
    row.c_over_cm = 0.5;
    row.conventional_status = RunStatus::Diverged;
    row.proposed_status = RunStatus::Completed;
    row.proposed_error = 0.94;
    sw.rows.push_back(row);
    std::ostringstream os;
    write_sweep_csv(os, sw);
    const auto lines = split_lines(os.str());
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "C,C_over_CM,conventional_max_error,proposed_max_error");
    EXPECT_EQ(lines[1], "100,0.5,Diverged,0.94");
}

TEST(ReportTest, SweepMarkdownLayout) {
    SweepResult sw;
    SweepRow row;
    row.c = 200.0;
    row.c_over_cm = 1.0;
    row.conventional_status = RunStatus::Completed;
    row.conventional_error = 0.0203;
    row.proposed_status = RunStatus::Completed;
    row.proposed_error = 0.0203;
    sw.rows.push_back(row);
    std::ostringstream os;
    write_sweep_markdown(os, sw);
    const auto lines = split_lines(os.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "| C | C/C_M | Conventional [m] | Proposed [m] |");
    EXPECT_NE(lines[2].find("| 200 | 1 |"), std::string::npos);
    EXPECT_NE(lines[2].find("0.0203"), std::string::npos);
}

TEST(ReportTest, PathCsv) {
    const TargetPath path = builtin_path(BuiltinPath::Path1);
    const auto points = path.reconstruct(1.0);
    std::ostringstream os;
    write_path_csv(os, points, path);
    const auto lines = split_lines(os.str());
    ASSERT_EQ(lines.size(), 152u); // header + 151 samples
    EXPECT_EQ(lines[0], "s,xi_r,eta_r,theta_r,kappa_r");
}

TEST(ReportTest, SvgEmissionDoesNotTouchNumericalOutput) {
    const RunResult r = short_run();
    std::ostringstream before;
    write_timeseries_csv(before, r);

    const TargetPath path = builtin_path(BuiltinPath::Path1);
    const auto polyline = path.reconstruct(0.1);
    std::ostringstream svg1, svg2;
    write_trajectory_svg(svg1, polyline, r, ControlMode::Mec);
    write_error_svg(svg2, r, ControlMode::Feedforward);
    EXPECT_NE(svg1.str().find("<svg"), std::string::npos);
    EXPECT_NE(svg1.str().find("stroke-dasharray"), std::string::npos);
    EXPECT_NE(svg2.str().find("polyline"), std::string::npos);

    std::ostringstream after;
    write_timeseries_csv(after, r);
    EXPECT_EQ(before.str(), after.str());
}
