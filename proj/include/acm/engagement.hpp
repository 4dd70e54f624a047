#pragma once

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "acm/airframe.hpp"

namespace acm {

enum class Player : int { One = 0, Two = 1 };

constexpr Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }
constexpr int player_number(Player p) { return static_cast<int>(p) + 1; }

/// Joint state of both aircraft plus the decision-step counter.
struct GameState {
    AircraftState ac1;
    AircraftState ac2;
    int k = 0;

    const AircraftState& aircraft(Player p) const { return p == Player::One ? ac1 : ac2; }
    AircraftState& aircraft(Player p) { return p == Player::One ? ac1 : ac2; }

    friend bool operator==(const GameState&, const GameState&) = default;
};

/// Aircraft swap, counter untouched.
inline GameState swapped(const GameState& s) { return {s.ac2, s.ac1, s.k}; }

struct JointManeuver {
    Maneuver m1 = Maneuver::Straight;
    Maneuver m2 = Maneuver::Straight;

    Maneuver of(Player p) const { return p == Player::One ? m1 : m2; }

    friend bool operator==(const JointManeuver&, const JointManeuver&) = default;
};

/// Bearing and aspect are arccos values in [0, pi]; distance in meters.
struct RelativeGeometry {
    double bearing = 0.0;
    double aspect = 0.0;
    double distance = 0.0;
};

enum class Outcome { Ongoing, Win1, Win2, Draw };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Ongoing: return "Ongoing";
        case Outcome::Win1: return "Win1";
        case Outcome::Win2: return "Win2";
        case Outcome::Draw: return "Draw";
    }
    return "?";
}

inline Outcome outcome_from_name(std::string_view name) {
    if (name == "Ongoing") return Outcome::Ongoing;
    if (name == "Win1") return Outcome::Win1;
    if (name == "Win2") return Outcome::Win2;
    if (name == "Draw") return Outcome::Draw;
    throw std::invalid_argument("unknown outcome '" + std::string(name) + "'");
}

constexpr bool is_terminal(Outcome o) { return o != Outcome::Ongoing; }

/// Win-cone limits and reward-shaping settings.
class EngagementParams {
public:
    EngagementParams(double d_min, double d_max, double d_nom, double r_d, double bearing_max,
                     double aspect_max, double w, double gamma)
        : d_min_(d_min), d_max_(d_max), d_nom_(d_nom), r_d_(r_d), bearing_max_(bearing_max),
          aspect_max_(aspect_max), w_(w), gamma_(gamma) {
        constexpr double pi = std::numbers::pi;
        if (!(d_min > 0.0 && d_min < d_max))
            throw std::invalid_argument("EngagementParams: need 0 < d_min < d_max");
        if (!(r_d > 0.0)) throw std::invalid_argument("EngagementParams: need r_d > 0");
        if (!(bearing_max > 0.0 && bearing_max < pi && aspect_max > 0.0 && aspect_max < pi))
            throw std::invalid_argument("EngagementParams: cone angles must lie in (0, pi)");
        if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("EngagementParams: need 0 < w < 1");
        if (!(gamma > 0.0 && gamma <= 1.0))
            throw std::invalid_argument("EngagementParams: need 0 < gamma <= 1");
        if (!(bearing_max + aspect_max < pi)) {
            // Both win cones can then hold at once; check_terminal reports Draw.
            std::cerr << "warning: bearing_max + aspect_max >= pi, simultaneous wins resolve to "
                         "Draw\n";
        }
    }

    /// Reference cones and shaping with w = 0.5, gamma = 0.8.
    static EngagementParams reference() {
        return {0.1, 3.0, 2.0, 18.0, deg_to_rad(30.0), deg_to_rad(60.0), 0.5, 0.8};
    }

    double d_min() const { return d_min_; }
    double d_max() const { return d_max_; }
    double d_nom() const { return d_nom_; }
    double r_d() const { return r_d_; }
    double bearing_max() const { return bearing_max_; }
    double aspect_max() const { return aspect_max_; }
    double w() const { return w_; }
    double gamma() const { return gamma_; }

    friend bool operator==(const EngagementParams&, const EngagementParams&) = default;

private:
    double d_min_;
    double d_max_;
    double d_nom_;
    double r_d_;
    double bearing_max_;
    double aspect_max_;
    double w_;
    double gamma_;
};

/// Separations below this are treated as coincident.
inline constexpr double kDegenerateDistance = 1e-9;

struct DegenerateGeometry : std::domain_error {
    DegenerateGeometry() : std::domain_error("degenerate geometry") {}
};

namespace detail {

inline double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

/// Geometry seen from `self` toward `other`; nullopt when coincident.
inline std::optional<RelativeGeometry> geometry_between(const AircraftState& self,
                                                        const AircraftState& other) {
    const double lx = other.x - self.x;
    const double ly = other.y - self.y;
    const double dist = std::hypot(lx, ly);
    if (dist < kDegenerateDistance) return std::nullopt;
    // Unit velocity directions; speed cancels in the cosine.
    const double bearing = clamped_acos((lx * std::cos(self.theta) + ly * std::sin(self.theta)) / dist);
    const double aspect = clamped_acos((lx * std::cos(other.theta) + ly * std::sin(other.theta)) / dist);
    return RelativeGeometry{bearing, aspect, dist};
}

}  // namespace detail

/// Tolerant variant used inside search loops: nullopt for coincident aircraft.
inline std::optional<RelativeGeometry> try_relative_geometry(const GameState& s, Player player) {
    return player == Player::One ? detail::geometry_between(s.ac1, s.ac2)
                                 : detail::geometry_between(s.ac2, s.ac1);
}

/// Throws DegenerateGeometry for coincident aircraft.
inline RelativeGeometry relative_geometry(const GameState& s, Player player) {
    auto g = try_relative_geometry(s, player);
    if (!g) throw DegenerateGeometry();
    return *g;
}

inline bool in_win_cone(const RelativeGeometry& g, const EngagementParams& p) {
    return p.d_min() < g.distance && g.distance < p.d_max() && g.bearing < p.bearing_max() &&
           g.aspect < p.aspect_max();
}

/// Terminal-set membership. Returns Ongoing for coincident aircraft and Draw
/// if both cones hold.
///
/// Both cones cannot hold when bearing_max + aspect_max < pi: the line of
/// sight flips sign between the players, so aspect2 = pi - bearing1, and
/// Win1 needs bearing1 < bearing_max while Win2 needs
/// aspect2 = pi - bearing1 < aspect_max.
inline Outcome check_terminal(const GameState& s, const EngagementParams& p) {
    const auto g1 = try_relative_geometry(s, Player::One);
    if (!g1) return Outcome::Ongoing;
    // Distance is shared; skip the second geometry when out of range.
    if (!(p.d_min() < g1->distance && g1->distance < p.d_max())) return Outcome::Ongoing;
    const auto g2 = try_relative_geometry(s, Player::Two);
    const bool win1 = in_win_cone(*g1, p);
    const bool win2 = in_win_cone(*g2, p);
    if (win1 && win2) return Outcome::Draw;
    if (win1) return Outcome::Win1;
    if (win2) return Outcome::Win2;
    return Outcome::Ongoing;
}

/// Strict variant: throws DegenerateGeometry for coincident aircraft.
inline Outcome check_terminal_strict(const GameState& s, const EngagementParams& p) {
    relative_geometry(s, Player::One);
    return check_terminal(s, p);
}

/// Sparse zero-sum reward (r1, r2).
constexpr std::pair<double, double> terminal_reward(Outcome o) {
    switch (o) {
        case Outcome::Win1: return {1.0, -1.0};
        case Outcome::Win2: return {-1.0, 1.0};
        default: return {0.0, 0.0};
    }
}

inline double terminal_reward(Outcome o, Player player) {
    const auto [r1, r2] = terminal_reward(o);
    return player == Player::One ? r1 : r2;
}

/// Dense shaping term in [0, 1] from a geometry.
///
/// The bracket is kept in its printed form 1 - (1 - aspect/pi) - (1 - bearing/pi),
/// which equals aspect/pi + bearing/pi - 1: -1 when pointing at an opponent
/// flying straight away, +1 when the roles are reversed.
inline double shaping_term(const RelativeGeometry& g, const EngagementParams& p) {
    constexpr double pi = std::numbers::pi;
    const double bracket = 1.0 - (1.0 - g.aspect / pi) - (1.0 - g.bearing / pi);
    return 0.5 - 0.5 * bracket * std::exp(-std::abs(g.distance - p.d_nom()) / p.r_d());
}

/// Shaping term of `player`; 0.5 (neutral) for coincident aircraft.
inline double shaping_term(const GameState& s, Player player, const EngagementParams& p) {
    const auto g = try_relative_geometry(s, player);
    return g ? shaping_term(*g, p) : 0.5;
}

/// Strict variant: throws DegenerateGeometry for coincident aircraft.
inline double shaping_term_strict(const GameState& s, Player player, const EngagementParams& p) {
    return shaping_term(relative_geometry(s, player), p);
}

/// w * terminal + (1 - w) * shaping at the same state. Range [-w, 1].
inline double shaped_reward(const GameState& s, Player player, const EngagementParams& p) {
    return p.w() * terminal_reward(check_terminal(s, p), player) +
           (1.0 - p.w()) * shaping_term(s, player, p);
}

struct ShapedEvaluation {
    Outcome outcome = Outcome::Ongoing;
    double u1 = 0.0;
    double u2 = 0.0;
};

/// Both players' shaped rewards plus the outcome, sharing one geometry pass.
inline ShapedEvaluation evaluate(const GameState& s, const EngagementParams& p) {
    const auto g1 = try_relative_geometry(s, Player::One);
    if (!g1) {
        const double neutral = (1.0 - p.w()) * 0.5;
        return {Outcome::Ongoing, neutral, neutral};
    }
    const auto g2 = try_relative_geometry(s, Player::Two);
    const bool win1 = in_win_cone(*g1, p);
    const bool win2 = in_win_cone(*g2, p);
    Outcome o = Outcome::Ongoing;
    if (win1 && win2) o = Outcome::Draw;
    else if (win1) o = Outcome::Win1;
    else if (win2) o = Outcome::Win2;
    const auto [r1, r2] = terminal_reward(o);
    return {o, p.w() * r1 + (1.0 - p.w()) * shaping_term(*g1, p),
            p.w() * r2 + (1.0 - p.w()) * shaping_term(*g2, p)};
}

/// Simultaneous joint step: each aircraft flies its own maneuver under its
/// own params from the pre-move state.
inline GameState transition(const GameState& s, JointManeuver joint, const AircraftParams& p1,
                            const AircraftParams& p2) {
    return {step_maneuver(s.ac1, joint.m1, p1), step_maneuver(s.ac2, joint.m2, p2), s.k + 1};
}

/// Everything needed to advance and score a game: both airframes and the
/// engagement rules.
struct GameContext {
    AircraftParams p1 = AircraftParams::reference();
    AircraftParams p2 = AircraftParams::reference();
    EngagementParams eng = EngagementParams::reference();

    const AircraftParams& params(Player p) const { return p == Player::One ? p1 : p2; }

    GameState transition(const GameState& s, JointManeuver joint) const {
        return acm::transition(s, joint, p1, p2);
    }
};

}  // namespace acm
