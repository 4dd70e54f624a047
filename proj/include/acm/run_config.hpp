#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/arena.hpp"

namespace acm {

/// Bad config text or values. Carries the offending key or line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCaseError : std::runtime_error {
    explicit UnknownCaseError(const std::string& id)
        : std::runtime_error("unknown case '" + id + "' (expected I, II, III, IV or custom)") {}
};

inline bool is_preset_case(const std::string& id) {
    return id == "I" || id == "II" || id == "III" || id == "IV";
}

/// Fully resolved run: case preset plus any overrides.
struct RunConfig {
    std::string case_id = "I";
    std::uint64_t seed = 42;
    int trials = 100;
    int parallel = 1;
    std::string out_dir = "out";
    bool plot = true;
    double t_game = 70.0;  // seconds
    double t_sim = 10.0;   // seconds
    std::string tactic1 = "MG";
    std::string tactic2 = "MG";
    SearchConfig search = smcts_m_config(kPresetExtraIterations);
    GameContext ctx;
    InitialBounds bounds;
};

/// Round-trippable text for a double.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + text + "'");
    }
}

inline long long parse_integer(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + text + "'");
    }
}

inline std::uint64_t parse_seed(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ConfigError("config key '" + key + "': expected an unsigned 64-bit seed, got '" + text + "'");
    return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + text + "'");
}

inline std::string playout_name(PlayoutKind k) {
    switch (k) {
        case PlayoutKind::Random: return "Random";
        case PlayoutKind::Greedy: return "Greedy";
        case PlayoutKind::EpsilonGreedy: return "EpsilonGreedy";
        case PlayoutKind::MatrixGame: return "MatrixGame";
    }
    return "?";
}

/// Aircraft fields as a mutable tuple so single keys can be overridden
/// before revalidation.
struct AirframeFields {
    double v, zeta_dot, zeta_max, dt, g;
    int n_s;

    explicit AirframeFields(const AircraftParams& p)
        : v(p.v()), zeta_dot(p.zeta_dot()), zeta_max(p.zeta_max()), dt(p.dt()), g(p.g()),
          n_s(p.n_s()) {}
    AircraftParams build() const { return {v, zeta_dot, zeta_max, dt, n_s, g}; }
};

struct EngagementFields {
    double d_min, d_max, d_nom, r_d, bearing_max, aspect_max, w, gamma;

    explicit EngagementFields(const EngagementParams& p)
        : d_min(p.d_min()), d_max(p.d_max()), d_nom(p.d_nom()), r_d(p.r_d()),
          bearing_max(p.bearing_max()), aspect_max(p.aspect_max()), w(p.w()), gamma(p.gamma()) {}
    EngagementParams build() const {
        return {d_min, d_max, d_nom, r_d, bearing_max, aspect_max, w, gamma};
    }
};

inline bool set_airframe(AirframeFields& f, const std::string& field, const std::string& key,
                         const std::string& value) {
    if (field == "v") f.v = parse_double(key, value);
    else if (field == "zeta_dot") f.zeta_dot = parse_double(key, value);
    else if (field == "zeta_dot_deg") f.zeta_dot = deg_to_rad(parse_double(key, value));
    else if (field == "zeta_max") f.zeta_max = parse_double(key, value);
    else if (field == "zeta_max_deg") f.zeta_max = deg_to_rad(parse_double(key, value));
    else if (field == "dt") f.dt = parse_double(key, value);
    else if (field == "n_s") f.n_s = static_cast<int>(parse_integer(key, value));
    else if (field == "g") f.g = parse_double(key, value);
    else return false;
    return true;
}

inline bool set_engagement(EngagementFields& f, const std::string& field, const std::string& key,
                           const std::string& value) {
    if (field == "d_min") f.d_min = parse_double(key, value);
    else if (field == "d_max") f.d_max = parse_double(key, value);
    else if (field == "d_nom") f.d_nom = parse_double(key, value);
    else if (field == "r_d") f.r_d = parse_double(key, value);
    else if (field == "bearing_max") f.bearing_max = parse_double(key, value);
    else if (field == "bearing_max_deg") f.bearing_max = deg_to_rad(parse_double(key, value));
    else if (field == "aspect_max") f.aspect_max = parse_double(key, value);
    else if (field == "aspect_max_deg") f.aspect_max = deg_to_rad(parse_double(key, value));
    else if (field == "w") f.w = parse_double(key, value);
    else if (field == "gamma") f.gamma = parse_double(key, value);
    else return false;
    return true;
}

}  // namespace detail

/// Parses `key = value` lines; `#` starts a comment. Keys keep file order;
/// a repeated key is an error.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (seen[key]++)
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

/// Preset values for one of the cases I-IV.
inline RunConfig preset_run_config(const std::string& case_id) {
    RunConfig rc;
    if (!is_preset_case(case_id)) throw UnknownCaseError(case_id);
    const CaseSpec spec = case_preset(case_id);
    rc.case_id = case_id;
    rc.tactic1 = tactic_label(spec.tactic1);
    rc.tactic2 = tactic_label(spec.tactic2);
    rc.ctx = spec.ctx;
    rc.bounds = spec.bounds;
    return rc;
}

/// Applies overrides in order. `case` must come first if present, since it
/// resets everything to the preset.
inline void apply_overrides(RunConfig& rc,
                            const std::vector<std::pair<std::string, std::string>>& kv) {
    detail::AirframeFields a1(rc.ctx.p1);
    detail::AirframeFields a2(rc.ctx.p2);
    detail::EngagementFields eng(rc.ctx.eng);
    for (const auto& [key, value] : kv) {
        const auto dot = key.find('.');
        const std::string group = dot == std::string::npos ? "" : key.substr(0, dot);
        const std::string field = dot == std::string::npos ? key : key.substr(dot + 1);
        bool ok = true;
        if (group.empty()) {
            if (key == "case") rc.case_id = value;
            else if (key == "seed") rc.seed = detail::parse_seed(key, value);
            else if (key == "trials") rc.trials = static_cast<int>(detail::parse_integer(key, value));
            else if (key == "parallel") rc.parallel = static_cast<int>(detail::parse_integer(key, value));
            else if (key == "out") rc.out_dir = value;
            else if (key == "plot") rc.plot = detail::parse_bool(key, value);
            else if (key == "t_game") rc.t_game = detail::parse_double(key, value);
            else if (key == "t_sim") rc.t_sim = detail::parse_double(key, value);
            else ok = false;
        } else if (group == "player1" && field == "tactic") {
            rc.tactic1 = value;
        } else if (group == "player2" && field == "tactic") {
            rc.tactic2 = value;
        } else if (group == "ac1") {
            ok = detail::set_airframe(a1, field, key, value);
        } else if (group == "ac2") {
            ok = detail::set_airframe(a2, field, key, value);
        } else if (group == "eng") {
            ok = detail::set_engagement(eng, field, key, value);
        } else if (group == "search") {
            if (field == "m_tree") rc.search.m_tree = static_cast<int>(detail::parse_integer(key, value));
            else if (field == "extra_iterations")
                rc.search.extra_iterations = static_cast<int>(detail::parse_integer(key, value));
            else if (field == "selection") {
                if (value == "UCB1") rc.search.selection = Ucb1{};
                else if (value == "Thompson") rc.search.selection = Thompson{};
                else throw ConfigError("config key 'search.selection': expected UCB1 or Thompson");
            } else if (field == "c") {
                if (!std::holds_alternative<Ucb1>(rc.search.selection))
                    throw ConfigError("config key 'search.c' requires search.selection = UCB1");
                std::get<Ucb1>(rc.search.selection).c = detail::parse_double(key, value);
            } else if (field == "c1" || field == "c2") {
                if (!std::holds_alternative<Thompson>(rc.search.selection))
                    throw ConfigError("config key '" + key + "' requires search.selection = Thompson");
                auto& t = std::get<Thompson>(rc.search.selection);
                (field == "c1" ? t.c1 : t.c2) = detail::parse_double(key, value);
            } else if (field == "epsilon") rc.search.playout.epsilon = detail::parse_double(key, value);
            else if (field == "shuffle_expansion")
                rc.search.shuffle_expansion = detail::parse_bool(key, value);
            else if (field == "absorbing_terminal")
                rc.search.absorbing_terminal = detail::parse_bool(key, value);
            else ok = false;
        } else if (group == "init") {
            if (field == "half_side") rc.bounds.half_side = detail::parse_double(key, value);
            else if (field == "max_attempts")
                rc.bounds.max_attempts = static_cast<int>(detail::parse_integer(key, value));
            else ok = false;
        } else {
            ok = false;
        }
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }
    try {
        rc.ctx.p1 = a1.build();
        rc.ctx.p2 = a2.build();
        rc.ctx.eng = eng.build();
        rc.search.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

/// Tactic from its label: MG, SMCTS-M, SMCTS-G, SMCTS-R or SMCTS-E.
inline Tactic make_tactic(const std::string& label, SearchConfig search) {
    if (label == "MG") return MgTactic{};
    if (label == "SMCTS-M") search.playout.kind = PlayoutKind::MatrixGame;
    else if (label == "SMCTS-G") search.playout.kind = PlayoutKind::Greedy;
    else if (label == "SMCTS-R") search.playout.kind = PlayoutKind::Random;
    else if (label == "SMCTS-E") search.playout.kind = PlayoutKind::EpsilonGreedy;
    else throw ConfigError("unknown tactic '" + label + "'");
    return SmctsTactic{search};
}

inline int seconds_to_steps(double seconds, double step_seconds, const char* what) {
    const double steps = seconds / step_seconds;
    const double rounded = std::round(steps);
    if (rounded < 0 || std::abs(steps - rounded) > 1e-9)
        throw ConfigError(std::string(what) + " must be a non-negative multiple of the maneuver duration");
    return static_cast<int>(rounded);
}

/// Study specification and search horizon derived from a resolved config.
inline CaseSpec to_case_spec(const RunConfig& rc) {
    if (rc.trials < 0 || rc.trials % 2 != 0) throw ConfigError("trials must be even and non-negative");
    if (rc.parallel < 1) throw ConfigError("parallel must be >= 1");
    const double step = rc.ctx.p1.maneuver_duration();
    if (std::abs(step - rc.ctx.p2.maneuver_duration()) > 1e-12)
        throw ConfigError("both aircraft must share the maneuver duration dt * n_s");
    SearchConfig search = rc.search;
    search.t_sim = seconds_to_steps(rc.t_sim, step, "t_sim");
    try {
        search.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    CaseSpec spec;
    spec.id = rc.case_id;
    spec.ctx = rc.ctx;
    spec.bounds = rc.bounds;
    spec.horizon = seconds_to_steps(rc.t_game, step, "t_game");
    spec.tactic1 = make_tactic(rc.tactic1, search);
    spec.tactic2 = make_tactic(rc.tactic2, search);
    return spec;
}

/// Every key of the resolved config in a fixed order, values formatted so
/// that reading them back reproduces the run bit for bit.
inline std::vector<std::pair<std::string, std::string>> echo_config(const RunConfig& rc) {
    std::vector<std::pair<std::string, std::string>> kv;
    auto add = [&](std::string k, std::string v) { kv.emplace_back(std::move(k), std::move(v)); };
    add("case", rc.case_id);
    add("seed", std::to_string(rc.seed));
    add("trials", std::to_string(rc.trials));
    add("parallel", std::to_string(rc.parallel));
    add("out", rc.out_dir);
    add("plot", rc.plot ? "true" : "false");
    add("t_game", format_double(rc.t_game));
    add("t_sim", format_double(rc.t_sim));
    add("player1.tactic", rc.tactic1);
    add("player2.tactic", rc.tactic2);
    for (int i = 1; i <= 2; ++i) {
        const AircraftParams& p = i == 1 ? rc.ctx.p1 : rc.ctx.p2;
        const std::string g = "ac" + std::to_string(i) + ".";
        add(g + "v", format_double(p.v()));
        add(g + "zeta_dot", format_double(p.zeta_dot()));
        add(g + "zeta_max", format_double(p.zeta_max()));
        add(g + "dt", format_double(p.dt()));
        add(g + "n_s", std::to_string(p.n_s()));
        add(g + "g", format_double(p.g()));
    }
    const EngagementParams& e = rc.ctx.eng;
    add("eng.d_min", format_double(e.d_min()));
    add("eng.d_max", format_double(e.d_max()));
    add("eng.d_nom", format_double(e.d_nom()));
    add("eng.r_d", format_double(e.r_d()));
    add("eng.bearing_max", format_double(e.bearing_max()));
    add("eng.aspect_max", format_double(e.aspect_max()));
    add("eng.w", format_double(e.w()));
    add("eng.gamma", format_double(e.gamma()));
    add("search.m_tree", std::to_string(rc.search.m_tree));
    add("search.extra_iterations", std::to_string(rc.search.extra_iterations));
    if (const auto* u = std::get_if<Ucb1>(&rc.search.selection)) {
        add("search.selection", "UCB1");
        add("search.c", format_double(u->c));
    } else {
        const auto& t = std::get<Thompson>(rc.search.selection);
        add("search.selection", "Thompson");
        add("search.c1", format_double(t.c1));
        add("search.c2", format_double(t.c2));
    }
    add("search.epsilon", format_double(rc.search.playout.epsilon));
    add("search.shuffle_expansion", rc.search.shuffle_expansion ? "true" : "false");
    add("search.absorbing_terminal", rc.search.absorbing_terminal ? "true" : "false");
    add("init.half_side", format_double(rc.bounds.half_side));
    add("init.max_attempts", std::to_string(rc.bounds.max_attempts));
    return kv;
}

inline std::string render_config(const RunConfig& rc) {
    std::ostringstream os;
    for (const auto& [k, v] : echo_config(rc)) os << k << " = " << v << '\n';
    return os.str();
}

/// Preset named by `case` in the key-value list (default I), then the
/// remaining keys applied on top.
inline RunConfig resolve_config(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string case_id = "I";
    for (const auto& [k, v] : kv)
        if (k == "case") case_id = v;
    RunConfig rc;
    if (is_preset_case(case_id))
        rc = preset_run_config(case_id);
    else if (case_id == "custom")
        rc.case_id = case_id;
    else
        throw UnknownCaseError(case_id);
    apply_overrides(rc, kv);
    return rc;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    return resolve_config(parse_key_values(in));
}

}  // namespace acm
