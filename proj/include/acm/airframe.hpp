#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace acm {

inline constexpr double kStandardGravity = 9.81;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Difference a - b wrapped into (-pi, pi].
inline double wrapped_difference(double a, double b) {
    double d = std::remainder(a - b, 2.0 * std::numbers::pi);
    if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
}

/// Planar kinematic state of one aircraft. Heading is kept unwrapped.
struct AircraftState {
    double x = 0.0;      // east, m
    double y = 0.0;      // north, m
    double v = 1.0;      // speed, m/s
    double theta = 0.0;  // heading, rad
    double zeta = 0.0;   // bank, rad

    friend bool operator==(const AircraftState&, const AircraftState&) = default;
};

/// Performance limits and integration settings of one airframe. Validated on
/// construction; the dynamics assume a valid instance.
class AircraftParams {
public:
    AircraftParams(double v, double zeta_dot, double zeta_max, double dt, int n_s,
                   double g = kStandardGravity)
        : v_(v), zeta_dot_(zeta_dot), zeta_max_(zeta_max), dt_(dt), n_s_(n_s), g_(g) {
        if (!(v > 0.0) || !(zeta_dot > 0.0) || !(zeta_max > 0.0) || !(dt > 0.0) ||
            !(g > 0.0) || n_s < 1)
            throw std::invalid_argument("AircraftParams: all fields must be strictly positive");
        if (!(zeta_max < std::numbers::pi / 2))
            throw std::invalid_argument("AircraftParams: zeta_max must be below 90 degrees");
    }

    /// Reference airframe: 2.5 m/s, 45 deg/s bank rate, 23 deg bank limit,
    /// 0.05 s steps, 20 steps per maneuver.
    static AircraftParams reference() {
        return {2.5, deg_to_rad(45.0), deg_to_rad(23.0), 0.05, 20};
    }

    double v() const { return v_; }
    double zeta_dot() const { return zeta_dot_; }
    double zeta_max() const { return zeta_max_; }
    double dt() const { return dt_; }
    int n_s() const { return n_s_; }
    double g() const { return g_; }
    double maneuver_duration() const { return dt_ * n_s_; }

    AircraftParams with_zeta_dot(double zeta_dot) const {
        return {v_, zeta_dot, zeta_max_, dt_, n_s_, g_};
    }

    friend bool operator==(const AircraftParams&, const AircraftParams&) = default;

private:
    double v_;
    double zeta_dot_;
    double zeta_max_;
    double dt_;
    int n_s_;
    double g_;
};

enum class Maneuver : int { Left = 0, Straight = 1, Right = 2 };

inline constexpr std::array<Maneuver, 3> kManeuvers = {Maneuver::Left, Maneuver::Straight,
                                                       Maneuver::Right};

constexpr int index_of(Maneuver m) { return static_cast<int>(m); }
constexpr Maneuver maneuver_at(int i) { return static_cast<Maneuver>(i); }

/// Left <-> Right, Straight fixed.
constexpr Maneuver mirrored(Maneuver m) { return maneuver_at(2 - index_of(m)); }

constexpr char maneuver_letter(Maneuver m) {
    switch (m) {
        case Maneuver::Left: return 'L';
        case Maneuver::Straight: return 'S';
        case Maneuver::Right: return 'R';
    }
    return '?';
}

inline Maneuver maneuver_from_letter(char c) {
    switch (c) {
        case 'L': return Maneuver::Left;
        case 'S': return Maneuver::Straight;
        case 'R': return Maneuver::Right;
        default: throw std::invalid_argument(std::string("unknown maneuver letter '") + c + "'");
    }
}

/// Heading rate (g/v) tan(zeta) for the state's current bank.
inline double turn_rate(const AircraftState& state, const AircraftParams& params) {
    return params.g() / state.v * std::tan(state.zeta);
}

/// Holds one basic maneuver for n_s Euler steps. Each step updates bank
/// (clamped), then heading from the new bank, then position from the new
/// heading.
inline AircraftState step_maneuver(AircraftState s, Maneuver maneuver,
                                   const AircraftParams& params) {
    const double dt = params.dt();
    const double dzeta = params.zeta_dot() * dt;
    const double g_over_v = params.g() / s.v;
    double tan_zeta = std::tan(s.zeta);
    for (int k = 0; k < params.n_s(); ++k) {
        const double before = s.zeta;
        if (maneuver == Maneuver::Left)
            s.zeta = std::max(s.zeta - dzeta, -params.zeta_max());
        else if (maneuver == Maneuver::Right)
            s.zeta = std::min(s.zeta + dzeta, params.zeta_max());
        if (s.zeta != before) tan_zeta = std::tan(s.zeta);
        s.theta += g_over_v * tan_zeta * dt;
        s.x += s.v * std::cos(s.theta) * dt;
        s.y += s.v * std::sin(s.theta) * dt;
    }
    return s;
}

}  // namespace acm
