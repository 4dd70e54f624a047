#pragma once

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/arena.hpp"
#include "acm/run_config.hpp"

namespace acm {

// One row per decision step:
//   trial,step,time_s,x1,y1,theta1,zeta1,x2,y2,theta2,zeta2,m1,m2,outcome
// Row k holds states[k] and the joint maneuver flown from it; the last row of
// a trial has "-" maneuvers. `outcome` is Ongoing except on the last row,
// which carries the trial's final outcome. Angles in radians.

inline constexpr const char* kTrajectoryHeader =
    "trial,step,time_s,x1,y1,theta1,zeta1,x2,y2,theta2,zeta2,m1,m2,outcome";

struct TrajectorySchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void write_trajectory_header(std::ostream& os) { os << kTrajectoryHeader << '\n'; }

inline void write_trajectory_rows(std::ostream& os, const TrialRecord& rec) {
    for (int k = 0; k < static_cast<int>(rec.states.size()); ++k) {
        const GameState& s = rec.states[k];
        const bool last = k == rec.steps();
        os << rec.trial << ',' << k << ',' << format_double(rec.time_at(k)) << ','
           << format_double(s.ac1.x) << ',' << format_double(s.ac1.y) << ','
           << format_double(s.ac1.theta) << ',' << format_double(s.ac1.zeta) << ','
           << format_double(s.ac2.x) << ',' << format_double(s.ac2.y) << ','
           << format_double(s.ac2.theta) << ',' << format_double(s.ac2.zeta) << ',';
        if (last)
            os << "-,-," << outcome_name(rec.outcome);
        else
            os << maneuver_letter(rec.moves[k].m1) << ',' << maneuver_letter(rec.moves[k].m2)
               << ",Ongoing";
        os << '\n';
    }
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrialRecord>& trials) {
    write_trajectory_header(os);
    for (const auto& t : trials) write_trajectory_rows(os, t);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <class T>
T parse_cell(const std::string& cell, int row, const char* column) {
    T v{};
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || end != cell.data() + cell.size())
        throw TrajectorySchemaError("row " + std::to_string(row) + ": bad " + column + " value '" +
                                    cell + "'");
    return v;
}

}  // namespace detail

/// Reads trajectories back into records. Speeds are not stored, so they come
/// from the airframes; `step_seconds` is the maneuver duration.
inline std::vector<TrialRecord> read_trajectory_csv(std::istream& in, double v1 = 2.5,
                                                    double v2 = 2.5, double step_seconds = 1.0) {
    std::string line;
    if (!std::getline(in, line)) throw TrajectorySchemaError("row 1: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryHeader)
        throw TrajectorySchemaError("row 1: header must be '" + std::string(kTrajectoryHeader) + "'");

    std::vector<TrialRecord> trials;
    bool open = false;  // last trial still expects rows
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 14)
            throw TrajectorySchemaError("row " + std::to_string(row) + ": expected 14 columns, got " +
                                        std::to_string(cells.size()));
        const int trial = detail::parse_cell<int>(cells[0], row, "trial");
        const int step = detail::parse_cell<int>(cells[1], row, "step");
        detail::parse_cell<double>(cells[2], row, "time_s");
        GameState s;
        s.ac1 = {detail::parse_cell<double>(cells[3], row, "x1"),
                 detail::parse_cell<double>(cells[4], row, "y1"), v1,
                 detail::parse_cell<double>(cells[5], row, "theta1"),
                 detail::parse_cell<double>(cells[6], row, "zeta1")};
        s.ac2 = {detail::parse_cell<double>(cells[7], row, "x2"),
                 detail::parse_cell<double>(cells[8], row, "y2"), v2,
                 detail::parse_cell<double>(cells[9], row, "theta2"),
                 detail::parse_cell<double>(cells[10], row, "zeta2")};
        s.k = step;

        if (!open) {
            if (step != 0)
                throw TrajectorySchemaError("row " + std::to_string(row) + ": trial " +
                                            std::to_string(trial) + " must start at step 0");
            TrialRecord rec;
            rec.trial = trial;
            rec.step_seconds = step_seconds;
            trials.push_back(std::move(rec));
            open = true;
        } else if (const int next = static_cast<int>(trials.back().states.size());
                   trial != trials.back().trial || step != next) {
            throw TrajectorySchemaError("row " + std::to_string(row) + ": expected trial " +
                                        std::to_string(trials.back().trial) + " step " +
                                        std::to_string(next));
        }
        TrialRecord& rec = trials.back();
        rec.states.push_back(s);

        const Outcome outcome = [&] {
            try {
                return outcome_from_name(cells[13]);
            } catch (const std::invalid_argument&) {
                throw TrajectorySchemaError("row " + std::to_string(row) + ": bad outcome '" +
                                            cells[13] + "'");
            }
        }();
        if (cells[11] == "-" && cells[12] == "-") {
            if (outcome == Outcome::Ongoing)
                throw TrajectorySchemaError("row " + std::to_string(row) +
                                            ": final row must carry Win1, Win2 or Draw");
            rec.outcome = outcome;
            open = false;
            continue;
        }
        if (outcome != Outcome::Ongoing)
            throw TrajectorySchemaError("row " + std::to_string(row) +
                                        ": only the final row may carry an outcome");
        if (cells[11].size() != 1 || cells[12].size() != 1)
            throw TrajectorySchemaError("row " + std::to_string(row) + ": maneuvers must be L, S or R");
        try {
            rec.moves.push_back({maneuver_from_letter(cells[11][0]), maneuver_from_letter(cells[12][0])});
        } catch (const std::invalid_argument&) {
            throw TrajectorySchemaError("row " + std::to_string(row) + ": maneuvers must be L, S or R");
        }
    }
    if (open)
        throw TrajectorySchemaError("row " + std::to_string(row) + ": trial " +
                                    std::to_string(trials.back().trial) + " has no final row");
    if (trials.empty()) throw TrajectorySchemaError("trajectory file holds no rows");
    return trials;
}

}  // namespace acm
