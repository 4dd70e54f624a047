#include <gtest/gtest.h>

#include <cmath>

#include "acm/arena.hpp"

using namespace acm;

namespace {

Outcome mirror(Outcome o) {
    if (o == Outcome::Win1) return Outcome::Win2;
    if (o == Outcome::Win2) return Outcome::Win1;
    return o;
}

CaseSpec quick_case(const std::string& id, int horizon = 30) {
    CaseSpec c = case_preset(id, 5);
    if (auto* s = std::get_if<SmctsTactic>(&c.tactic1)) s->config.t_sim = 4;
    c.horizon = horizon;
    return c;
}

}  // namespace

TEST(Arena, PresetsMatchCaseTable) {
    const double full = deg_to_rad(45.0), half = deg_to_rad(22.5);
    const CaseSpec i = case_preset("I"), ii = case_preset("II"), iii = case_preset("III"),
                   iv = case_preset("IV");
    EXPECT_EQ(tactic_label(i.tactic1), "MG");
    EXPECT_EQ(tactic_label(i.tactic2), "MG");
    for (const CaseSpec* c : {&ii, &iii, &iv}) {
        EXPECT_EQ(tactic_label(c->tactic1), "SMCTS-M");
        EXPECT_EQ(tactic_label(c->tactic2), "MG");
        const SearchConfig& s = std::get<SmctsTactic>(c->tactic1).config;
        EXPECT_EQ(s.m_tree, 9);
        EXPECT_EQ(s.t_sim, 10);
        EXPECT_DOUBLE_EQ(std::get<Ucb1>(s.selection).c, 0.2);
        EXPECT_EQ(s.playout.kind, PlayoutKind::MatrixGame);
    }
    EXPECT_DOUBLE_EQ(ii.ctx.p1.zeta_dot(), full);
    EXPECT_DOUBLE_EQ(ii.ctx.p2.zeta_dot(), full);
    EXPECT_DOUBLE_EQ(iii.ctx.p1.zeta_dot(), full);
    EXPECT_DOUBLE_EQ(iii.ctx.p2.zeta_dot(), half);
    EXPECT_DOUBLE_EQ(iv.ctx.p1.zeta_dot(), half);
    EXPECT_DOUBLE_EQ(iv.ctx.p2.zeta_dot(), full);
    EXPECT_EQ(i.horizon, 70);
    EXPECT_THROW(case_preset("V"), std::invalid_argument);
}

TEST(Arena, TacticLabels) {
    SearchConfig c;
    for (auto [kind, label] : {std::pair{PlayoutKind::Random, "SMCTS-R"}, {PlayoutKind::Greedy, "SMCTS-G"},
                               {PlayoutKind::EpsilonGreedy, "SMCTS-E"}, {PlayoutKind::MatrixGame, "SMCTS-M"}}) {
        c.playout.kind = kind;
        EXPECT_EQ(tactic_label(SmctsTactic{c}), label);
    }
}

TEST(Arena, InitialStatesAreAdmissible) {
    const GameContext ctx;
    const InitialBounds bounds;
    Rng rng = make_rng(61);
    for (int i = 0; i < 5000; ++i) {
        const GameState s = sample_initial_state(rng, bounds, ctx);
        ASSERT_GT(std::hypot(s.ac1.x - s.ac2.x, s.ac1.y - s.ac2.y), ctx.eng.d_max());
        ASSERT_EQ(check_terminal(s, ctx.eng), Outcome::Ongoing);
        for (const AircraftState* a : {&s.ac1, &s.ac2}) {
            ASSERT_LE(std::abs(a->x), bounds.half_side);
            ASSERT_LE(std::abs(a->y), bounds.half_side);
            ASSERT_EQ(a->zeta, 0.0);
            ASSERT_EQ(a->v, 2.5);
        }
        ASSERT_EQ(s.k, 0);
    }
}

TEST(Arena, SamplerGivesUpWhenNothingFits) {
    const GameContext ctx;
    Rng rng = make_rng(62);
    EXPECT_THROW(sample_initial_state(rng, {1.0, 50}, ctx), std::runtime_error);
}

TEST(Arena, Symmetrize) {
    const GameState s{{1, 2, 2.5, 0.3, 0.1}, {4, 5, 2.0, 1.3, -0.1}, 7};
    const GameState t = symmetrize(s);
    EXPECT_EQ(t.ac1, s.ac2);
    EXPECT_EQ(t.ac2, s.ac1);
    EXPECT_EQ(t.k, 0);
}

TEST(Arena, PlayGameRecordIsConsistent) {
    const CaseSpec spec = quick_case("II");
    Rng init = make_rng(63);
    for (int i = 0; i < 4; ++i) {
        const GameState x0 = sample_initial_state(init, spec.bounds, spec.ctx);
        Rng r1 = make_rng(64, {static_cast<std::uint64_t>(i)}), r2 = make_rng(65);
        const TrialRecord rec = play_game(x0, spec.tactic1, spec.tactic2, spec.horizon, spec.ctx, r1, r2);
        ASSERT_EQ(rec.states.size(), rec.moves.size() + 1);
        ASSERT_EQ(rec.initial(), x0);
        for (int k = 0; k < rec.steps(); ++k) {
            ASSERT_EQ(rec.states[k + 1], spec.ctx.transition(rec.states[k], rec.moves[k]));
            if (k + 1 < rec.steps()) {
                ASSERT_EQ(check_terminal(rec.states[k + 1], spec.ctx.eng), Outcome::Ongoing);
            }
        }
        const Outcome last = check_terminal(rec.states.back(), spec.ctx.eng);
        if (is_terminal(last)) {
            EXPECT_EQ(rec.outcome, last);
        } else {
            EXPECT_EQ(rec.outcome, Outcome::Draw);
            EXPECT_EQ(rec.steps(), spec.horizon);
        }
        EXPECT_DOUBLE_EQ(rec.time_at(rec.steps()), rec.steps() * 1.0);
    }
}

TEST(Arena, ZeroHorizonIsDraw) {
    const GameContext ctx;
    Rng init = make_rng(66);
    const GameState x0 = sample_initial_state(init, {}, ctx);
    Rng r1 = make_rng(1), r2 = make_rng(2);
    const TrialRecord rec = play_game(x0, MgTactic{}, MgTactic{}, 0, ctx, r1, r2);
    EXPECT_EQ(rec.outcome, Outcome::Draw);
    EXPECT_EQ(rec.states.size(), 1u);
}

TEST(Arena, TerminalStartRejected) {
    const GameContext ctx;
    const GameState win{{0, 0, 2.5, 0, 0}, {2, 0, 2.5, 0, 0}, 0};
    Rng r1 = make_rng(1), r2 = make_rng(2);
    EXPECT_THROW(play_game(win, MgTactic{}, MgTactic{}, 10, ctx, r1, r2), std::invalid_argument);
}

TEST(Arena, TrialSeedsSwapSlotsForTwins) {
    for (int pair = 0; pair < 20; ++pair) {
        const TrialSeeds a = trial_seeds(42, 2 * pair), b = trial_seeds(42, 2 * pair + 1);
        EXPECT_EQ(a.initial, b.initial);
        EXPECT_EQ(a.player1, b.player2);
        EXPECT_EQ(a.player2, b.player1);
        EXPECT_NE(a.player1, a.player2);
        if (pair > 0) {
            EXPECT_NE(a.initial, trial_seeds(42, 2 * pair - 2).initial);
        }
    }
    EXPECT_NE(trial_seeds(42, 0).initial, trial_seeds(43, 0).initial);
}

// Identical tactics and airframes: a twin trial replays its partner with the
// aircraft relabeled, so the outcome is the mirror.
TEST(Arena, SymmetricCaseTwinsAreMirrors) {
    const CaseSpec spec = case_preset("I");
    const MCStudy study = run_mc_study(spec, 40, 7);
    for (int p = 0; p < 20; ++p) {
        const TrialRecord& a = study.trials[2 * p];
        const TrialRecord& b = study.trials[2 * p + 1];
        ASSERT_EQ(b.outcome, mirror(a.outcome));
        ASSERT_EQ(a.steps(), b.steps());
        for (int k = 0; k <= a.steps(); ++k) {
            ASSERT_EQ(a.states[k].ac1, b.states[k].ac2);
            ASSERT_EQ(a.states[k].ac2, b.states[k].ac1);
        }
    }
    EXPECT_EQ(study.summary.m_w1, study.summary.m_w2);
}

TEST(Arena, StudyIndependentOfParallelism) {
    const CaseSpec spec = quick_case("III", 20);
    const MCStudy serial = run_mc_study(spec, 8, 11, 1);
    const MCStudy parallel = run_mc_study(spec, 8, 11, 3);
    ASSERT_EQ(serial.trials.size(), parallel.trials.size());
    for (std::size_t t = 0; t < serial.trials.size(); ++t) {
        EXPECT_EQ(serial.trials[t], parallel.trials[t]);
        EXPECT_EQ(serial.trials[t].trial, static_cast<int>(t));
    }
}

TEST(Arena, SummaryPartitionsTrials) {
    const MCStudy study = run_mc_study(case_preset("I"), 30, 3);
    const MCSummary& s = study.summary;
    EXPECT_EQ(s.m_s, 30);
    EXPECT_EQ(s.m_w1 + s.m_w2 + s.m_d, 30);
    EXPECT_NEAR(s.p_w1 + s.p_w2 + s.p_d, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.p_w1, s.m_w1 / 30.0);
}

TEST(Arena, StudyRejectsBadInput) {
    EXPECT_THROW(run_mc_study(case_preset("I"), 3, 1), std::invalid_argument);
    CaseSpec c = case_preset("I");
    c.ctx.p2 = AircraftParams(2.5, 1.0, 0.4, 0.05, 10);
    EXPECT_THROW(run_mc_study(c, 2, 1), std::invalid_argument);
}

TEST(Arena, WorkerErrorsPropagate) {
    CaseSpec c = case_preset("I");
    c.bounds = {1.0, 5};
    EXPECT_THROW(run_mc_study(c, 6, 1, 3), std::runtime_error);
    EXPECT_THROW(run_mc_study(c, 6, 1, 1), std::runtime_error);
}
