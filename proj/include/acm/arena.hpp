#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "acm/engagement.hpp"
#include "acm/matrix_game.hpp"
#include "acm/rng.hpp"
#include "acm/smcts.hpp"

namespace acm {

/// One-step matrix-game player; no search.
struct MgTactic {};

/// Simultaneous-move tree search player.
struct SmctsTactic {
    SearchConfig config;
};

using Tactic = std::variant<MgTactic, SmctsTactic>;

/// Short label: MG, SMCTS-M, SMCTS-G, SMCTS-R, SMCTS-E.
inline std::string tactic_label(const Tactic& t) {
    if (std::holds_alternative<MgTactic>(t)) return "MG";
    switch (std::get<SmctsTactic>(t).config.playout.kind) {
        case PlayoutKind::MatrixGame: return "SMCTS-M";
        case PlayoutKind::Greedy: return "SMCTS-G";
        case PlayoutKind::Random: return "SMCTS-R";
        case PlayoutKind::EpsilonGreedy: return "SMCTS-E";
    }
    return "?";
}

inline Maneuver choose_maneuver(const Tactic& tactic, const GameState& s, Player player,
                                const GameContext& ctx, Rng& rng) {
    if (const auto* smcts = std::get_if<SmctsTactic>(&tactic))
        return search(s, player, smcts->config, ctx, rng);
    return mg_tactic(s, player, ctx, rng);
}

struct TrialRecord {
    int trial = 0;
    std::vector<GameState> states;      // states[k] at time k * step_seconds
    std::vector<JointManeuver> moves;   // moves[k] takes states[k] to states[k + 1]
    Outcome outcome = Outcome::Draw;
    double step_seconds = 1.0;

    int steps() const { return static_cast<int>(moves.size()); }
    const GameState& initial() const { return states.front(); }
    double time_at(int k) const { return k * step_seconds; }

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Plays until a terminal state or `horizon` decision steps (Draw). Each
/// tactic sees only the pre-move state and draws from its own stream.
inline TrialRecord play_game(const GameState& x0, const Tactic& t1, const Tactic& t2, int horizon,
                             const GameContext& ctx, Rng& rng1, Rng& rng2) {
    if (is_terminal(check_terminal(x0, ctx.eng)))
        throw std::invalid_argument("play_game: initial state is terminal");
    TrialRecord rec;
    rec.step_seconds = ctx.p1.maneuver_duration();
    rec.states.push_back(x0);
    GameState s = x0;
    for (int k = 0; k < horizon; ++k) {
        const Maneuver m1 = choose_maneuver(t1, s, Player::One, ctx, rng1);
        const Maneuver m2 = choose_maneuver(t2, s, Player::Two, ctx, rng2);
        s = ctx.transition(s, {m1, m2});
        rec.moves.push_back({m1, m2});
        rec.states.push_back(s);
        const Outcome o = check_terminal(s, ctx.eng);
        if (is_terminal(o)) {
            rec.outcome = o;
            return rec;
        }
    }
    rec.outcome = Outcome::Draw;
    return rec;
}

/// Region for random starts: a square of side 2 * half_side centered at the
/// origin.
struct InitialBounds {
    double half_side = 6.0;
    int max_attempts = 1000;
};

/// Uniform positions and headings, zero bank, speeds from the airframes.
/// Rejects terminal starts and separations not exceeding d_max.
inline GameState sample_initial_state(Rng& rng, const InitialBounds& bounds,
                                      const GameContext& ctx) {
    const double two_pi = 2.0 * std::numbers::pi;
    for (int attempt = 0; attempt < bounds.max_attempts; ++attempt) {
        GameState s;
        s.ac1.x = (2.0 * uniform01(rng) - 1.0) * bounds.half_side;
        s.ac1.y = (2.0 * uniform01(rng) - 1.0) * bounds.half_side;
        s.ac1.theta = uniform01(rng) * two_pi;
        s.ac1.v = ctx.p1.v();
        s.ac2.x = (2.0 * uniform01(rng) - 1.0) * bounds.half_side;
        s.ac2.y = (2.0 * uniform01(rng) - 1.0) * bounds.half_side;
        s.ac2.theta = uniform01(rng) * two_pi;
        s.ac2.v = ctx.p2.v();
        const double sep = std::hypot(s.ac2.x - s.ac1.x, s.ac2.y - s.ac1.y);
        if (sep > ctx.eng.d_max() && !is_terminal(check_terminal(s, ctx.eng))) return s;
    }
    throw std::runtime_error("sample_initial_state: no admissible state after max attempts");
}

/// Aircraft swap with a fresh step counter.
inline GameState symmetrize(const GameState& x0) { return {x0.ac2, x0.ac1, 0}; }

struct MCSummary {
    int m_s = 0;
    int m_w1 = 0;
    int m_w2 = 0;
    int m_d = 0;
    double p_w1 = 0.0;
    double p_w2 = 0.0;
    double p_d = 0.0;

    static MCSummary tally(const std::vector<TrialRecord>& trials) {
        MCSummary s;
        s.m_s = static_cast<int>(trials.size());
        for (const auto& t : trials) {
            if (t.outcome == Outcome::Win1) ++s.m_w1;
            else if (t.outcome == Outcome::Win2) ++s.m_w2;
            else ++s.m_d;
        }
        if (s.m_s > 0) {
            s.p_w1 = static_cast<double>(s.m_w1) / s.m_s;
            s.p_w2 = static_cast<double>(s.m_w2) / s.m_s;
            s.p_d = static_cast<double>(s.m_d) / s.m_s;
        }
        return s;
    }
};

struct CaseSpec {
    std::string id = "custom";
    Tactic tactic1 = MgTactic{};
    Tactic tactic2 = MgTactic{};
    GameContext ctx;
    int horizon = 70;  // decision steps
    InitialBounds bounds;
};

/// Reference tree-search player: matrix-game playouts, UCB1 c = 0.2,
/// nine-node tree, ten-step playouts.
inline SearchConfig smcts_m_config(int extra_iterations) {
    SearchConfig c;
    c.m_tree = 9;
    c.t_sim = 10;
    c.selection = Ucb1{0.2};
    c.playout = {PlayoutKind::MatrixGame, 0.1};
    c.extra_iterations = extra_iterations;
    return c;
}

/// Default post-growth passes for the case presets.
inline constexpr int kPresetExtraIterations = 40;

/// Cases I-IV: MG vs MG, then SMCTS-M vs MG with equal, superior and
/// inferior bank rate for the searcher.
inline CaseSpec case_preset(const std::string& id, int extra_iterations = kPresetExtraIterations) {
    CaseSpec c;
    c.id = id;
    const AircraftParams base = AircraftParams::reference();
    const AircraftParams slow = base.with_zeta_dot(deg_to_rad(22.5));
    const SmctsTactic searcher{smcts_m_config(extra_iterations)};
    if (id == "I") {
        c.tactic1 = MgTactic{};
        c.tactic2 = MgTactic{};
    } else if (id == "II") {
        c.tactic1 = searcher;
    } else if (id == "III") {
        c.tactic1 = searcher;
        c.ctx.p2 = slow;
    } else if (id == "IV") {
        c.tactic1 = searcher;
        c.ctx.p1 = slow;
    } else {
        throw std::invalid_argument("unknown case '" + id + "'");
    }
    return c;
}

struct MCStudy {
    MCSummary summary;
    std::vector<TrialRecord> trials;
};

/// Seeds for one trial. Streams are keyed by (pair, starting slot), so a
/// symmetrized twin hands each starting aircraft's stream to whichever
/// player flies it.
struct TrialSeeds {
    std::uint64_t initial;
    std::uint64_t player1;
    std::uint64_t player2;
};

inline TrialSeeds trial_seeds(std::uint64_t master_seed, int trial) {
    const std::uint64_t pair = static_cast<std::uint64_t>(trial / 2);
    const bool twin = trial % 2 == 1;
    const std::uint64_t slot_a = derive_seed(master_seed, {pair, 1});
    const std::uint64_t slot_b = derive_seed(master_seed, {pair, 2});
    return {derive_seed(master_seed, {pair, 0}), twin ? slot_b : slot_a, twin ? slot_a : slot_b};
}

/// One trial of a study: pair trial / 2, twin when the index is odd.
inline TrialRecord run_trial(const CaseSpec& spec, std::uint64_t master_seed, int trial) {
    const TrialSeeds seeds = trial_seeds(master_seed, trial);
    Rng init(seeds.initial);
    const GameState base = sample_initial_state(init, spec.bounds, spec.ctx);
    const GameState x0 = trial % 2 == 0 ? base : symmetrize(base);
    Rng rng1(seeds.player1);
    Rng rng2(seeds.player2);
    TrialRecord rec = play_game(x0, spec.tactic1, spec.tactic2, spec.horizon, spec.ctx, rng1, rng2);
    rec.trial = trial;
    return rec;
}

/// m_s games from m_s / 2 random starts and their symmetrized twins.
/// Results do not depend on `parallelism`.
inline MCStudy run_mc_study(const CaseSpec& spec, int m_s, std::uint64_t master_seed,
                            int parallelism = 1) {
    if (m_s < 0 || m_s % 2 != 0)
        throw std::invalid_argument("run_mc_study: trial count must be even and non-negative");
    if (spec.ctx.p1.maneuver_duration() != spec.ctx.p2.maneuver_duration())
        throw std::invalid_argument("run_mc_study: aircraft maneuver durations differ");
    MCStudy study;
    study.trials.resize(m_s);
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        try {
            for (int t = next++; t < m_s; t = next++)
                study.trials[t] = run_trial(spec, master_seed, t);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = m_s;
        }
    };
    const int workers = std::clamp(parallelism, 1, std::max(1, m_s));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    study.summary = MCSummary::tally(study.trials);
    return study;
}

}  // namespace acm
