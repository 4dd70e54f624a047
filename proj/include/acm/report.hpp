#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "acm/arena.hpp"
#include "acm/run_config.hpp"
#include "acm/svg_plot.hpp"
#include "acm/trajectory_csv.hpp"

namespace acm {

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// summary.json body. The config echo leaves out `parallel` and `out`, so
/// the file does not depend on how or where the run was executed.
inline std::string summary_json(const RunConfig& rc, const MCSummary& s) {
    nlohmann::ordered_json j;
    j["case"] = rc.case_id;
    j["seed"] = rc.seed;
    j["m_s"] = s.m_s;
    j["m_w1"] = s.m_w1;
    j["m_w2"] = s.m_w2;
    j["m_d"] = s.m_d;
    j["p_w1"] = s.p_w1;
    j["p_w2"] = s.p_w2;
    j["p_d"] = s.p_d;
    nlohmann::ordered_json echo = nlohmann::ordered_json::object();
    for (const auto& [k, v] : echo_config(rc))
        if (k != "parallel" && k != "out") echo[k] = v;
    j["config_echo"] = std::move(echo);
    return j.dump(2) + "\n";
}

inline void print_summary_table(std::ostream& os, const RunConfig& rc, const MCSummary& s) {
    char line[128];
    os << "case " << rc.case_id << ": " << rc.tactic1 << " (aircraft 1) vs " << rc.tactic2
       << " (aircraft 2), seed " << rc.seed << "\n";
    os << "outcome          count   probability\n";
    std::snprintf(line, sizeof line, "aircraft 1 win  %6d   %.3f\n", s.m_w1, s.p_w1);
    os << line;
    std::snprintf(line, sizeof line, "aircraft 2 win  %6d   %.3f\n", s.m_w2, s.p_w2);
    os << line;
    std::snprintf(line, sizeof line, "draw            %6d   %.3f\n", s.m_d, s.p_d);
    os << line;
    std::snprintf(line, sizeof line, "total           %6d\n", s.m_s);
    os << line;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + path.string() + "'");
    out << body;
    if (!out.flush()) throw OutputError("write failed for '" + path.string() + "'");
}

}  // namespace detail

inline void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw OutputError("cannot create output directory '" + dir.string() + "'");
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw OutputError("output directory '" + dir.string() + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

/// Writes summary.json, trials.csv, resolved_config and, when plotting,
/// bars.svg plus one track_<trial>.svg per trial.
inline void write_run_artifacts(const RunConfig& rc, const MCStudy& study) {
    const std::filesystem::path dir(rc.out_dir);
    prepare_output_dir(dir);
    detail::write_file(dir / "summary.json", summary_json(rc, study.summary));
    {
        std::ostringstream csv;
        write_trajectory_csv(csv, study.trials);
        detail::write_file(dir / "trials.csv", csv.str());
    }
    detail::write_file(dir / "resolved_config", render_config(rc));
    if (!rc.plot) return;
    detail::write_file(dir / "bars.svg",
                       render_bar_chart({{"Case " + rc.case_id, study.summary}},
                                        rc.tactic1 + " vs " + rc.tactic2));
    for (const auto& t : study.trials)
        detail::write_file(dir / ("track_" + std::to_string(t.trial) + ".svg"),
                           render_track_svg(t, rc.ctx.eng, rc.ctx));
}

/// Runs the study described by `rc`; all files are written after the
/// trials finish.
inline MCStudy run_case(const RunConfig& rc) {
    const CaseSpec spec = to_case_spec(rc);
    prepare_output_dir(rc.out_dir);
    MCStudy study = run_mc_study(spec, rc.trials, rc.seed, rc.parallel);
    write_run_artifacts(rc, study);
    return study;
}

}  // namespace acm
