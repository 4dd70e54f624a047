#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "acm/arena.hpp"

namespace acm {

namespace svg {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

inline std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline constexpr const char* kBlue = "#1f5fbf";
inline constexpr const char* kRed = "#c8281e";
inline constexpr const char* kGrey = "#8c8c8c";

}  // namespace svg

struct BarGroup {
    std::string label;
    MCSummary summary;
};

/// Grouped bars of p_w1, p_w2 and p_d, one group per case.
inline std::string render_bar_chart(const std::vector<BarGroup>& groups,
                                    const std::string& title = "Outcome probabilities") {
    const double left = 60, right = 20, top = 40, bottom = 60, plot_h = 260;
    const double bar_w = 28, bar_gap = 4, group_gap = 36;
    const double group_w = 3 * bar_w + 2 * bar_gap;
    const double plot_w =
        std::max(1.0, static_cast<double>(groups.size())) * (group_w + group_gap) + group_gap;
    const double width = left + plot_w + right + 110;
    const double height = top + plot_h + bottom;
    const char* colors[3] = {svg::kBlue, svg::kRed, svg::kGrey};
    const char* names[3] = {"Aircraft 1 win", "Aircraft 2 win", "Draw"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(width) << "\" height=\""
       << svg::num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << svg::num(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << svg::escape(title) << "</text>\n";

    for (int t = 0; t <= 10; t += 2) {
        const double y = top + plot_h * (1.0 - t / 10.0);
        os << "<line x1=\"" << svg::num(left) << "\" y1=\"" << svg::num(y) << "\" x2=\""
           << svg::num(left + plot_w) << "\" y2=\"" << svg::num(y)
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << svg::num(left - 6) << "\" y=\"" << svg::num(y + 4)
           << "\" text-anchor=\"end\">" << svg::num(t / 10.0) << "</text>\n";
    }
    os << "<line x1=\"" << svg::num(left) << "\" y1=\"" << svg::num(top) << "\" x2=\"" << svg::num(left)
       << "\" y2=\"" << svg::num(top + plot_h) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << svg::num(left) << "\" y1=\"" << svg::num(top + plot_h) << "\" x2=\""
       << svg::num(left + plot_w) << "\" y2=\"" << svg::num(top + plot_h) << "\" stroke=\"black\"/>\n";
    os << "<text transform=\"translate(18," << svg::num(top + plot_h / 2)
       << ") rotate(-90)\" text-anchor=\"middle\">Probability</text>\n";

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const MCSummary& s = groups[g].summary;
        const double values[3] = {s.p_w1, s.p_w2, s.p_d};
        const double gx = left + group_gap + g * (group_w + group_gap);
        for (int b = 0; b < 3; ++b) {
            const double h = plot_h * values[b];
            const double x = gx + b * (bar_w + bar_gap);
            os << "<rect x=\"" << svg::num(x) << "\" y=\"" << svg::num(top + plot_h - h) << "\" width=\""
               << svg::num(bar_w) << "\" height=\"" << svg::num(h) << "\" fill=\"" << colors[b]
               << "\"/>\n";
            os << "<text x=\"" << svg::num(x + bar_w / 2) << "\" y=\"" << svg::num(top + plot_h - h - 4)
               << "\" text-anchor=\"middle\" font-size=\"10\">" << svg::num(values[b]) << "</text>\n";
        }
        os << "<text x=\"" << svg::num(gx + group_w / 2) << "\" y=\"" << svg::num(top + plot_h + 20)
           << "\" text-anchor=\"middle\">" << svg::escape(groups[g].label) << "</text>\n";
    }

    const double lx = left + plot_w + 16;
    for (int b = 0; b < 3; ++b) {
        const double ly = top + 10 + b * 20;
        os << "<rect x=\"" << svg::num(lx) << "\" y=\"" << svg::num(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
           << colors[b] << "\"/>\n";
        os << "<text x=\"" << svg::num(lx + 18) << "\" y=\"" << svg::num(ly) << "\">" << names[b]
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace detail {

struct TrackPoint {
    double x, y;
};

/// Positions at every integration step when airframes are known, otherwise
/// at decision steps only.
inline std::vector<TrackPoint> track_points(const TrialRecord& rec, Player p,
                                            const std::optional<GameContext>& ctx) {
    std::vector<TrackPoint> pts;
    for (int k = 0; k < static_cast<int>(rec.states.size()); ++k) {
        const AircraftState& a = rec.states[k].aircraft(p);
        pts.push_back({a.x, a.y});
        if (!ctx || k == rec.steps()) continue;
        const AircraftParams& params = ctx->params(p);
        const AircraftParams one_step(params.v(), params.zeta_dot(), params.zeta_max(), params.dt(), 1,
                                      params.g());
        AircraftState s = a;
        for (int i = 1; i < params.n_s(); ++i) {
            s = step_maneuver(s, rec.moves[k].of(p), one_step);
            pts.push_back({s.x, s.y});
        }
    }
    return pts;
}

}  // namespace detail

/// Plan view of one engagement. Aircraft 1 blue, aircraft 2 red, labels at
/// each whole second, circle at the start and triangle at the end. A decided
/// trial also shows the winner's cone between d_min and d_max.
inline std::string render_track_svg(const TrialRecord& rec, const EngagementParams& eng,
                                    const std::optional<GameContext>& ctx = std::nullopt) {
    if (rec.states.empty()) throw std::invalid_argument("render_track_svg: empty trajectory");

    const auto pts1 = detail::track_points(rec, Player::One, ctx);
    const auto pts2 = detail::track_points(rec, Player::Two, ctx);

    const bool decided = rec.outcome == Outcome::Win1 || rec.outcome == Outcome::Win2;
    const Player winner = rec.outcome == Outcome::Win2 ? Player::Two : Player::One;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto extend = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& p : pts1) extend(p.x, p.y);
    for (const auto& p : pts2) extend(p.x, p.y);

    std::vector<detail::TrackPoint> wedge;
    if (decided) {
        const AircraftState& a = rec.states.back().aircraft(winner);
        const int n = 24;
        for (int i = 0; i <= n; ++i) {
            const double phi = a.theta - eng.bearing_max() + 2.0 * eng.bearing_max() * i / n;
            wedge.push_back({a.x + eng.d_max() * std::cos(phi), a.y + eng.d_max() * std::sin(phi)});
        }
        for (int i = n; i >= 0; --i) {
            const double phi = a.theta - eng.bearing_max() + 2.0 * eng.bearing_max() * i / n;
            wedge.push_back({a.x + eng.d_min() * std::cos(phi), a.y + eng.d_min() * std::sin(phi)});
        }
        for (const auto& p : wedge) extend(p.x, p.y);
    }

    const double margin = 1.0;
    xmin -= margin;
    xmax += margin;
    ymin -= margin;
    ymax += margin;
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double size = 640.0, pad = 30.0;
    const double scale = (size - 2 * pad) / span;
    auto sx = [&](double x) { return pad + (x - xmin) * scale; };
    auto sy = [&](double y) { return size - pad - (y - ymin) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg::num(size) << "\" height=\""
       << svg::num(size + 30) << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << svg::num(size / 2) << "\" y=\"" << svg::num(size + 18)
       << "\" text-anchor=\"middle\" font-size=\"13\">trial " << rec.trial << ": "
       << outcome_name(rec.outcome) << " after " << svg::num(rec.time_at(rec.steps())) << " s</text>\n";

    if (decided) {
        os << "<polygon class=\"win-cone\" points=\"";
        for (std::size_t i = 0; i < wedge.size(); ++i)
            os << (i ? " " : "") << svg::num(sx(wedge[i].x)) << ',' << svg::num(sy(wedge[i].y));
        os << "\" fill=\"" << (winner == Player::One ? svg::kBlue : svg::kRed)
           << "\" fill-opacity=\"0.15\" stroke=\"" << (winner == Player::One ? svg::kBlue : svg::kRed)
           << "\" stroke-dasharray=\"4 3\"/>\n";
    }

    auto track = [&](const std::vector<detail::TrackPoint>& pts, Player p, const char* color) {
        os << "<polyline class=\"track" << player_number(p) << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << (i ? " " : "") << svg::num(sx(pts[i].x)) << ',' << svg::num(sy(pts[i].y));
        os << "\"/>\n";

        const AircraftState& first = rec.states.front().aircraft(p);
        os << "<circle cx=\"" << svg::num(sx(first.x)) << "\" cy=\"" << svg::num(sy(first.y))
           << "\" r=\"4\" fill=\"white\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";

        const AircraftState& last = rec.states.back().aircraft(p);
        const double hx = std::cos(last.theta), hy = -std::sin(last.theta);  // screen frame
        const double cx = sx(last.x), cy = sy(last.y);
        os << "<polygon points=\"" << svg::num(cx + 8 * hx) << ',' << svg::num(cy + 8 * hy) << ' '
           << svg::num(cx - 5 * hx - 4 * hy) << ',' << svg::num(cy - 5 * hy + 4 * hx) << ' '
           << svg::num(cx - 5 * hx + 4 * hy) << ',' << svg::num(cy - 5 * hy - 4 * hx) << "\" fill=\""
           << color << "\"/>\n";

        double next_label = 0.0;
        for (int k = 0; k < static_cast<int>(rec.states.size()); ++k) {
            const double t = rec.time_at(k);
            if (t + 1e-9 < next_label) continue;
            next_label = std::floor(t + 1e-9) + 1.0;
            const AircraftState& a = rec.states[k].aircraft(p);
            os << "<text x=\"" << svg::num(sx(a.x) + 4) << "\" y=\"" << svg::num(sy(a.y) - 4)
               << "\" fill=\"" << color << "\">" << std::lround(std::floor(t + 1e-9)) << "</text>\n";
        }
    };
    track(pts1, Player::One, svg::kBlue);
    track(pts2, Player::Two, svg::kRed);
    os << "</svg>\n";
    return os.str();
}

}  // namespace acm
