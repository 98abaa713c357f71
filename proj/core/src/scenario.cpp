#include "pathmec/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pathmec/errors.hpp"

namespace pathmec {

using nlohmann::json;

namespace {

// Rejects keys outside `allowed`, naming the first offender.
void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (allowed.find(item.key()) == allowed.end())
            throw ConfigError(where.empty() ? item.key() : where + "." + item.key(),
                              "unknown key");
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(where + "." + key, "must be a number");
    return v.get<double>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw ConfigError(where + "." + key, "must be a boolean");
    return v.get<bool>();
}

SegmentKind parse_kind(const std::string& text, const std::string& where) {
    if (text == "zero") return SegmentKind::Zero;
    if (text == "raised_cosine") return SegmentKind::RaisedCosine;
    if (text == "sine") return SegmentKind::Sine;
    if (text == "constant") return SegmentKind::Constant;
    throw ConfigError(where, "unknown segment kind '" + text +
                                 "' (expected zero, raised_cosine, sine, or constant)");
}

const char* kind_name(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Zero: return "zero";
        case SegmentKind::RaisedCosine: return "raised_cosine";
        case SegmentKind::Sine: return "sine";
        case SegmentKind::Constant: return "constant";
    }
    return "zero";
}

ControlMode parse_mode(const std::string& text, const std::string& where) {
    if (text == "feedforward") return ControlMode::Feedforward;
    if (text == "mec") return ControlMode::Mec;
    if (text == "direct") return ControlMode::DirectFeedback;
    throw ConfigError(where, "unknown mode '" + text + "' (expected feedforward, mec, or direct)");
}

TargetPath parse_path_section(const json& section, std::optional<int>* builtin_id) {
    reject_unknown_keys(section, "path", {"builtin", "segments", "origin"});
    if (section.contains("builtin") && section.contains("segments"))
        throw ConfigError("path", "give either builtin or segments, not both");

    PathPoint origin{0.0, 0.0, -3.0, 0.0};
    if (section.contains("origin")) {
        const json& o = section.at("origin");
        reject_unknown_keys(o, "path.origin", {"xi", "eta", "theta"});
        origin.xi_r = get_number(o, "path.origin", "xi", 0.0);
        origin.eta_r = get_number(o, "path.origin", "eta", -3.0);
        origin.theta_r = get_number(o, "path.origin", "theta", 0.0);
    }

    if (section.contains("segments")) {
        const json& segs = section.at("segments");
        if (!segs.is_array() || segs.empty())
            throw ConfigError("path.segments", "must be a non-empty array");
        std::vector<CurvatureSegment> segments;
        segments.reserve(segs.size());
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const std::string where = "path.segments[" + std::to_string(i) + "]";
            const json& s = segs[i];
            reject_unknown_keys(s, where, {"s_start", "s_end", "kind", "c", "omega", "phi"});
            if (!s.contains("kind") || !s.at("kind").is_string())
                throw ConfigError(where + ".kind", "required string");
            CurvatureSegment seg;
            seg.kind = parse_kind(s.at("kind").get<std::string>(), where + ".kind");
            if (!s.contains("s_start") || !s.contains("s_end"))
                throw ConfigError(where, "s_start and s_end are required");
            seg.s_start = get_number(s, where, "s_start", 0.0);
            seg.s_end = get_number(s, where, "s_end", 0.0);
            seg.c = get_number(s, where, "c", 0.0);
            seg.omega = get_number(s, where, "omega", 0.0);
            seg.phi = get_number(s, where, "phi", 0.0);
            segments.push_back(seg);
        }
        if (builtin_id) builtin_id->reset();
        return TargetPath(std::move(segments), origin);
    }

    int id = 1;
    if (section.contains("builtin")) {
        const json& b = section.at("builtin");
        if (!b.is_number_integer() || (b.get<int>() != 1 && b.get<int>() != 2))
            throw ConfigError("path.builtin", "must be 1 or 2");
        id = b.get<int>();
    }
    if (builtin_id) *builtin_id = id;
    TargetPath path = builtin_path(id == 1 ? BuiltinPath::Path1 : BuiltinPath::Path2);
    if (section.contains("origin"))
        return TargetPath(path.segments(), origin);
    return path;
}

} // namespace

const char* to_string(ControlMode mode) {
    switch (mode) {
        case ControlMode::Feedforward: return "feedforward";
        case ControlMode::Mec: return "mec";
        case ControlMode::DirectFeedback: return "direct";
    }
    return "mec";
}

LoadedScenario default_scenario(BuiltinPath id) {
    LoadedScenario s;
    s.config.path = builtin_path(id);
    s.config.builtin_path_id = static_cast<int>(id);
    s.config.validate_and_resolve();
    return s;
}

TargetPath parse_path_json(const std::string& json_text, std::optional<int>* builtin_id) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("path", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("path", "must be a JSON object");
    return parse_path_section(doc, builtin_id);
}

LoadedScenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("scenario", "must be a JSON object");
    reject_unknown_keys(doc, "", {"path", "vehicle", "controller", "simulation", "output"});

    LoadedScenario out;
    ScenarioConfig& cfg = out.config;

    if (doc.contains("path")) {
        cfg.path = parse_path_section(doc.at("path"), &cfg.builtin_path_id);
    } else {
        cfg.path = builtin_path(BuiltinPath::Path1);
        cfg.builtin_path_id = 1;
    }

    if (doc.contains("vehicle")) {
        const json& v = doc.at("vehicle");
        reject_unknown_keys(v, "vehicle",
                            {"a11", "a12", "a13", "a21", "a22", "a23", "v", "c", "wheelbase"});
        VehicleParams& p = cfg.plant;
        p.a11 = get_number(v, "vehicle", "a11", p.a11);
        p.a12 = get_number(v, "vehicle", "a12", p.a12);
        p.a13 = get_number(v, "vehicle", "a13", p.a13);
        p.a21 = get_number(v, "vehicle", "a21", p.a21);
        p.a22 = get_number(v, "vehicle", "a22", p.a22);
        p.a23 = get_number(v, "vehicle", "a23", p.a23);
        p.v = get_number(v, "vehicle", "v", p.v);
        p.c = get_number(v, "vehicle", "c", p.c);
        p.wheelbase = get_number(v, "vehicle", "wheelbase", p.wheelbase);
    }

    if (doc.contains("controller")) {
        const json& c = doc.at("controller");
        reject_unknown_keys(c, "controller",
                            {"alpha1", "alpha2", "alpha3", "k1", "k2", "k3", "c_nominal", "mode"});
        const ControllerGains& d = cfg.controller.gains;
        cfg.controller.gains = ControllerGains(
            get_number(c, "controller", "alpha1", d.alpha1),
            get_number(c, "controller", "alpha2", d.alpha2),
            get_number(c, "controller", "alpha3", d.alpha3),
            get_number(c, "controller", "k1", d.k1),
            get_number(c, "controller", "k2", d.k2),
            get_number(c, "controller", "k3", d.k3));
        cfg.controller.c_nominal = get_number(c, "controller", "c_nominal", cfg.controller.c_nominal);
        if (c.contains("mode")) {
            if (!c.at("mode").is_string())
                throw ConfigError("controller.mode", "must be a string");
            cfg.controller.mode = parse_mode(c.at("mode").get<std::string>(), "controller.mode");
        }
    }

    if (doc.contains("simulation")) {
        const json& s = doc.at("simulation");
        reject_unknown_keys(s, "simulation",
                            {"dt", "t_max", "z_max", "d_min", "theta_max", "skip_arclength",
                             "initial"});
        cfg.dt = get_number(s, "simulation", "dt", cfg.dt);
        if (s.contains("t_max")) {
            cfg.t_max = get_number(s, "simulation", "t_max", 0.0);
            out.t_max_explicit = true;
        }
        cfg.guards.z_max = get_number(s, "simulation", "z_max", cfg.guards.z_max);
        cfg.guards.d_min = get_number(s, "simulation", "d_min", cfg.guards.d_min);
        cfg.guards.theta_max = get_number(s, "simulation", "theta_max", cfg.guards.theta_max);
        cfg.skip_arclength = get_number(s, "simulation", "skip_arclength", cfg.skip_arclength);
        if (s.contains("initial")) {
            const json& i = s.at("initial");
            reject_unknown_keys(i, "simulation.initial",
                                {"beta", "psi_dot", "delta", "theta", "z", "s_r", "xi", "eta",
                                 "theta_o"});
            InitialState& init = cfg.initial;
            init.beta = get_number(i, "simulation.initial", "beta", init.beta);
            init.psi_dot = get_number(i, "simulation.initial", "psi_dot", init.psi_dot);
            init.delta = get_number(i, "simulation.initial", "delta", init.delta);
            init.theta = get_number(i, "simulation.initial", "theta", init.theta);
            init.z = get_number(i, "simulation.initial", "z", init.z);
            init.s_r = get_number(i, "simulation.initial", "s_r", init.s_r);
            init.xi = get_number(i, "simulation.initial", "xi", init.xi);
            init.eta = get_number(i, "simulation.initial", "eta", init.eta);
            init.theta_o = get_number(i, "simulation.initial", "theta_o", init.theta_o);
        }
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        reject_unknown_keys(o, "output", {"svg"});
        out.output.svg = get_bool(o, "output", "svg", out.output.svg);
    }

    cfg.validate_and_resolve();
    return out;
}

LoadedScenario load_scenario_file(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in)
        throw std::ios_base::failure("cannot read scenario file: " + file_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_echo_json(const ScenarioConfig& config, const OutputOptions& output) {
    json doc;

    json path;
    if (config.builtin_path_id) {
        path["builtin"] = *config.builtin_path_id;
    } else {
        json segs = json::array();
        for (const auto& seg : config.path.segments()) {
            json s;
            s["s_start"] = seg.s_start;
            s["s_end"] = seg.s_end;
            s["kind"] = kind_name(seg.kind);
            s["c"] = seg.c;
            s["omega"] = seg.omega;
            s["phi"] = seg.phi;
            segs.push_back(std::move(s));
        }
        path["segments"] = std::move(segs);
    }
    const PathPoint& o = config.path.origin();
    path["origin"] = {{"xi", o.xi_r}, {"eta", o.eta_r}, {"theta", o.theta_r}};
    doc["path"] = std::move(path);

    const VehicleParams& p = config.plant;
    doc["vehicle"] = {{"a11", p.a11}, {"a12", p.a12}, {"a13", p.a13},
                      {"a21", p.a21}, {"a22", p.a22}, {"a23", p.a23},
                      {"v", p.v},     {"c", p.c},     {"wheelbase", p.wheelbase}};

    const ControllerGains& g = config.controller.gains;
    doc["controller"] = {{"alpha1", g.alpha1}, {"alpha2", g.alpha2}, {"alpha3", g.alpha3},
                         {"k1", g.k1},         {"k2", g.k2},         {"k3", g.k3},
                         {"c_nominal", config.controller.c_nominal},
                         {"mode", to_string(config.controller.mode)}};

    const InitialState& i = config.initial;
    doc["simulation"] = {{"dt", config.dt},
                         {"t_max", config.t_max},
                         {"z_max", config.guards.z_max},
                         {"d_min", config.guards.d_min},
                         {"theta_max", config.guards.theta_max},
                         {"skip_arclength", config.skip_arclength},
                         {"initial",
                          {{"beta", i.beta},
                           {"psi_dot", i.psi_dot},
                           {"delta", i.delta},
                           {"theta", i.theta},
                           {"z", i.z},
                           {"s_r", i.s_r},
                           {"xi", i.xi},
                           {"eta", i.eta},
                           {"theta_o", i.theta_o}}}};

    doc["output"] = {{"svg", output.svg}};
    return doc.dump(2) + "\n";
}

} // namespace pathmec
