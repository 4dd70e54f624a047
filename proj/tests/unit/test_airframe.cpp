#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "acm/airframe.hpp"
#include "acm/rng.hpp"

using namespace acm;

namespace {

const AircraftParams kRef = AircraftParams::reference();

AircraftState random_state(Rng& rng, const AircraftParams& p) {
    return {20.0 * uniform01(rng) - 10.0, 20.0 * uniform01(rng) - 10.0, p.v(),
            (4.0 * uniform01(rng) - 2.0) * std::numbers::pi,
            (2.0 * uniform01(rng) - 1.0) * p.zeta_max()};
}

}  // namespace

TEST(Airframe, ParamsRejectNonPositiveFields) {
    EXPECT_THROW(AircraftParams(0.0, 1.0, 0.3, 0.05, 20), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, -1.0, 0.3, 0.05, 20), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, 1.0, 0.0, 0.05, 20), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, 1.0, 0.3, 0.0, 20), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, 1.0, 0.3, 0.05, 0), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, 1.0, 0.3, 0.05, 20, 0.0), std::invalid_argument);
    EXPECT_THROW(AircraftParams(2.5, 1.0, std::numbers::pi / 2, 0.05, 20), std::invalid_argument);
    EXPECT_NO_THROW(AircraftParams(2.5, 1.0, 0.3, 0.05, 1));
}

TEST(Airframe, ReferenceValues) {
    EXPECT_DOUBLE_EQ(kRef.v(), 2.5);
    EXPECT_DOUBLE_EQ(kRef.zeta_dot(), 45.0 * std::numbers::pi / 180.0);
    EXPECT_DOUBLE_EQ(kRef.zeta_max(), 23.0 * std::numbers::pi / 180.0);
    EXPECT_DOUBLE_EQ(kRef.dt(), 0.05);
    EXPECT_EQ(kRef.n_s(), 20);
    EXPECT_DOUBLE_EQ(kRef.g(), 9.81);
    EXPECT_NEAR(kRef.maneuver_duration(), 1.0, 1e-15);
}

TEST(Airframe, StraightFromLevelCoversOneManeuverLength) {
    const AircraftState s = step_maneuver({0, 0, 2.5, 0, 0}, Maneuver::Straight, kRef);
    EXPECT_NEAR(s.x, 2.5, 1e-12);
    EXPECT_NEAR(s.y, 0.0, 1e-12);
    EXPECT_EQ(s.v, 2.5);
    EXPECT_EQ(s.theta, 0.0);
    EXPECT_EQ(s.zeta, 0.0);
}

TEST(Airframe, OneInnerLeftStepRollsByRateTimesDt) {
    const AircraftParams one(2.5, kRef.zeta_dot(), kRef.zeta_max(), 0.05, 1);
    const AircraftState s = step_maneuver({0, 0, 2.5, 0, 0}, Maneuver::Left, one);
    EXPECT_NEAR(s.zeta, -0.0392699, 1e-7);
    EXPECT_NEAR(s.zeta, -deg_to_rad(2.25), 1e-15);
    // Heading and position use the new bank within the same step.
    const double theta = 9.81 / 2.5 * std::tan(s.zeta) * 0.05;
    EXPECT_DOUBLE_EQ(s.theta, theta);
    EXPECT_DOUBLE_EQ(s.x, 2.5 * std::cos(theta) * 0.05);
    EXPECT_DOUBLE_EQ(s.y, 2.5 * std::sin(theta) * 0.05);
}

TEST(Airframe, BankSaturatesAtLimit) {
    const AircraftParams one(2.5, kRef.zeta_dot(), kRef.zeta_max(), 0.05, 1);
    AircraftState s{0, 0, 2.5, 0, kRef.zeta_max()};
    for (int i = 0; i < 20; ++i) {
        s = step_maneuver(s, Maneuver::Right, one);
        EXPECT_EQ(s.zeta, kRef.zeta_max());
    }
    AircraftState l{0, 0, 2.5, 0, 0};
    for (int i = 0; i < 30; ++i) l = step_maneuver(l, Maneuver::Left, one);
    EXPECT_EQ(l.zeta, -kRef.zeta_max());
}

TEST(Airframe, StraightHoldsCurrentBank) {
    const AircraftState s = step_maneuver({0, 0, 2.5, 0, 0.2}, Maneuver::Straight, kRef);
    EXPECT_EQ(s.zeta, 0.2);
    EXPECT_NEAR(s.theta, 9.81 / 2.5 * std::tan(0.2) * 1.0, 1e-12);
}

TEST(Airframe, TurnRateValues) {
    EXPECT_EQ(turn_rate({0, 0, 2.5, 0, 0}, kRef), 0.0);
    const double expected = 9.81 / 2.5 * std::tan(0.401426);
    EXPECT_NEAR(turn_rate({0, 0, 2.5, 0, deg_to_rad(23)}, kRef), expected, 1e-5);
    EXPECT_NEAR(turn_rate({0, 0, 2.5, 0, deg_to_rad(23)}, kRef), 1.6657, 1e-4);
    EXPECT_NEAR(turn_rate({0, 0, 2.5, 0, -deg_to_rad(23)}, kRef), -expected, 1e-5);
    EXPECT_DOUBLE_EQ(turn_rate({0, 0, 2.5, 0, -0.3}, kRef), -turn_rate({0, 0, 2.5, 0, 0.3}, kRef));
}

TEST(Airframe, SpeedConservedAndBankBounded) {
    Rng rng = make_rng(11);
    const AircraftParams one(2.5, kRef.zeta_dot(), kRef.zeta_max(), 0.05, 1);
    for (int trial = 0; trial < 200; ++trial) {
        AircraftState s = random_state(rng, kRef);
        for (int i = 0; i < 60; ++i) {
            s = step_maneuver(s, maneuver_at(uniform_index(rng, 3)), one);
            ASSERT_EQ(s.v, kRef.v());
            ASSERT_LE(std::abs(s.zeta), kRef.zeta_max());
        }
    }
}

TEST(Airframe, StraightFlightClosedForm) {
    Rng rng = make_rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
        AircraftState s0 = random_state(rng, kRef);
        s0.zeta = 0.0;
        const AircraftState s = step_maneuver(s0, Maneuver::Straight, kRef);
        const double len = kRef.v() * kRef.n_s() * kRef.dt();
        ASSERT_NEAR(s.x, s0.x + len * std::cos(s0.theta), 1e-12);
        ASSERT_NEAR(s.y, s0.y + len * std::sin(s0.theta), 1e-12);
        ASSERT_EQ(s.theta, s0.theta);
    }
}

// With the bank saturated the heading advances by a fixed w*dt per inner step,
// so the inner-step positions are a regular polygon inscribed in a circle of
// radius v dt / (2 sin(w dt / 2)).
TEST(Airframe, SteadyTurnFollowsDiscreteCircle) {
    Rng rng = make_rng(13);
    const AircraftParams one(kRef.v(), kRef.zeta_dot(), kRef.zeta_max(), kRef.dt(), 1);
    for (int trial = 0; trial < 1000; ++trial) {
        AircraftState s = random_state(rng, kRef);
        const bool right = trial % 2 == 0;
        s.zeta = right ? kRef.zeta_max() : -kRef.zeta_max();
        const Maneuver m = right ? Maneuver::Right : Maneuver::Left;
        const double w = turn_rate(s, kRef);
        const double h = w * kRef.dt();

        const AircraftState end = step_maneuver(s, m, kRef);
        ASSERT_NEAR(end.theta - s.theta, w * kRef.n_s() * kRef.dt(), 1e-12);

        const double radius = kRef.v() * kRef.dt() / (2.0 * std::sin(std::abs(h) / 2.0));
        // Center: chord midpoint direction rotated by the half-turn.
        const double sign = right ? 1.0 : -1.0;
        const double phi = s.theta + h;  // direction of the first chord
        const double cx = s.x + kRef.v() * kRef.dt() / 2.0 * std::cos(phi) -
                          sign * radius * std::cos(std::abs(h) / 2.0) * std::sin(phi);
        const double cy = s.y + kRef.v() * kRef.dt() / 2.0 * std::sin(phi) +
                          sign * radius * std::cos(std::abs(h) / 2.0) * std::cos(phi);
        AircraftState p = s;
        for (int i = 0; i < kRef.n_s(); ++i) {
            ASSERT_NEAR(std::hypot(p.x - cx, p.y - cy), radius, 1e-9);
            p = step_maneuver(p, m, one);
        }
        ASSERT_NEAR(p.x, end.x, 1e-12);
        ASSERT_NEAR(p.y, end.y, 1e-12);
    }
}

TEST(Airframe, DiscreteRadiusApproachesContinuousRadius) {
    const double w = 9.81 / 2.5 * std::tan(kRef.zeta_max());
    const double continuous = 2.5 * 2.5 / (9.81 * std::tan(kRef.zeta_max()));
    double previous_gap = 1.0;
    for (double dt : {0.05, 0.01, 0.002}) {
        const double discrete = 2.5 * dt / (2.0 * std::sin(w * dt / 2.0));
        const double gap = discrete - continuous;
        EXPECT_GT(gap, 0.0);
        EXPECT_LT(gap, previous_gap / 10.0);
        previous_gap = gap;
    }
}

TEST(Airframe, MirrorSymmetry) {
    Rng rng = make_rng(14);
    for (int trial = 0; trial < 500; ++trial) {
        const AircraftState s = random_state(rng, kRef);
        const AircraftState r{s.x, -s.y, s.v, -s.theta, -s.zeta};
        const AircraftState a = step_maneuver(s, Maneuver::Left, kRef);
        const AircraftState b = step_maneuver(r, Maneuver::Right, kRef);
        ASSERT_NEAR(a.x, b.x, 1e-12);
        ASSERT_NEAR(a.y, -b.y, 1e-12);
        ASSERT_NEAR(a.theta, -b.theta, 1e-12);
        ASSERT_NEAR(a.zeta, -b.zeta, 1e-12);
        const AircraftState c = step_maneuver(s, Maneuver::Straight, kRef);
        const AircraftState d = step_maneuver(r, Maneuver::Straight, kRef);
        ASSERT_NEAR(c.y, -d.y, 1e-12);
    }
}

TEST(Airframe, DeterministicAndPure) {
    const AircraftState s{1.0, -2.0, 2.5, 0.7, 0.1};
    const AircraftState copy = s;
    const AircraftState a = step_maneuver(s, Maneuver::Right, kRef);
    const AircraftState b = step_maneuver(s, Maneuver::Right, kRef);
    EXPECT_EQ(a, b);
    EXPECT_EQ(s, copy);
}

TEST(Airframe, HeadingIsNotWrapped) {
    AircraftState s{0, 0, 2.5, 0, kRef.zeta_max()};
    for (int i = 0; i < 10; ++i) s = step_maneuver(s, Maneuver::Right, kRef);
    EXPECT_GT(s.theta, 2.0 * std::numbers::pi);
}

TEST(Airframe, WrappedDifference) {
    EXPECT_NEAR(wrapped_difference(0.1, 2.0 * std::numbers::pi), 0.1, 1e-12);
    EXPECT_NEAR(wrapped_difference(std::numbers::pi, -std::numbers::pi), 0.0, 1e-12);
    EXPECT_NEAR(wrapped_difference(-std::numbers::pi, 0.0), std::numbers::pi, 1e-12);
    EXPECT_NEAR(wrapped_difference(3.0, -3.0), 6.0 - 2.0 * std::numbers::pi, 1e-12);
}

TEST(Airframe, ManeuverHelpers) {
    EXPECT_EQ(mirrored(Maneuver::Left), Maneuver::Right);
    EXPECT_EQ(mirrored(Maneuver::Straight), Maneuver::Straight);
    for (Maneuver m : kManeuvers) {
        EXPECT_EQ(maneuver_from_letter(maneuver_letter(m)), m);
        EXPECT_EQ(maneuver_at(index_of(m)), m);
    }
    EXPECT_THROW(maneuver_from_letter('X'), std::invalid_argument);
}
