#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "acm/engagement.hpp"
#include "acm/matrix_game.hpp"
#include "acm/rng.hpp"

namespace acm {

struct Ucb1 {
    double c = 0.2;
};

struct Thompson {
    double c1 = 1.0;
    double c2 = 1.0;
};

using SelectionPolicy = std::variant<Ucb1, Thompson>;

enum class PlayoutKind { Random, Greedy, EpsilonGreedy, MatrixGame };

struct PlayoutPolicy {
    PlayoutKind kind = PlayoutKind::MatrixGame;
    double epsilon = 0.1;  // EpsilonGreedy only
};

struct SearchConfig {
    int m_tree = 9;            // max nodes, root included
    int t_sim = 10;            // playout horizon, decision steps
    SelectionPolicy selection = Ucb1{};
    PlayoutPolicy playout{};
    int extra_iterations = 0;  // passes after the tree is full
    bool shuffle_expansion = false;
    bool absorbing_terminal = true;

    void validate() const {
        if (m_tree < 1) throw std::invalid_argument("SearchConfig: m_tree must be >= 1");
        if (t_sim < 1) throw std::invalid_argument("SearchConfig: t_sim must be >= 1");
        if (extra_iterations < 0)
            throw std::invalid_argument("SearchConfig: extra_iterations must be >= 0");
        if (const auto* u = std::get_if<Ucb1>(&selection); u && !(u->c >= 0.0))
            throw std::invalid_argument("SearchConfig: UCB1 c must be >= 0");
        if (const auto* t = std::get_if<Thompson>(&selection); t && !(t->c1 > 0.0 && t->c2 > 0.0))
            throw std::invalid_argument("SearchConfig: Thompson c1, c2 must be > 0");
        if (!(playout.epsilon >= 0.0 && playout.epsilon <= 1.0))
            throw std::invalid_argument("SearchConfig: epsilon must lie in [0, 1]");
    }
};

/// Analytic range of a discounted shaped-reward playout return:
/// lo = -w * sum_k gamma^k, hi = sum_k gamma^k over k < t_sim.
struct RewardScale {
    double lo = -1.0;
    double hi = 1.0;

    static RewardScale for_playouts(const EngagementParams& eng, int t_sim) {
        double total = 0.0;
        double disc = 1.0;
        for (int k = 0; k < t_sim; ++k) {
            total += disc;
            disc *= eng.gamma();
        }
        return {-eng.w() * total, total};
    }

    double normalize(double r) const { return (r - lo) / (hi - lo); }
};

// ---------------------------------------------------------------------------
// Bandit indices

/// q + c sqrt(ln n_i / n_ij); +inf for an unvisited arm.
inline double ucb1_index(double q, std::int64_t n_ij, std::int64_t n_i, double c) {
    if (n_ij <= 0) return std::numeric_limits<double>::infinity();
    return q + c * std::sqrt(std::log(static_cast<double>(n_i)) / static_cast<double>(n_ij));
}

/// One draw from beta(c1 + q n_ij, c2 + (1 - q) n_ij). The arm's own count
/// appears in both shapes.
inline double thompson_index(double q, std::int64_t n_ij, double c1, double c2, Rng& rng) {
    const double n = static_cast<double>(std::max<std::int64_t>(n_ij, 0));
    return beta_draw(rng, c1 + q * n, c2 + (1.0 - q) * n);
}

// ---------------------------------------------------------------------------
// Playouts

/// Frozen-opponent one-step lookahead for `player`.
inline Maneuver greedy_move(const GameState& s, Player player, const GameContext& ctx) {
    Maneuver best = Maneuver::Left;
    double best_value = -std::numeric_limits<double>::infinity();
    for (Maneuver m : kManeuvers) {
        GameState next = s;
        next.aircraft(player) = step_maneuver(s.aircraft(player), m, ctx.params(player));
        const ShapedEvaluation e = evaluate(next, ctx.eng);
        const double u = player == Player::One ? e.u1 : e.u2;
        if (u > best_value) {
            best_value = u;
            best = m;
        }
    }
    return best;
}

inline Maneuver playout_move(const GameState& s, Player player, const PlayoutPolicy& policy,
                             const GameContext& ctx, Rng& rng) {
    switch (policy.kind) {
        case PlayoutKind::Random: return maneuver_at(uniform_index(rng, 3));
        case PlayoutKind::Greedy: return greedy_move(s, player, ctx);
        case PlayoutKind::EpsilonGreedy:
            if (uniform01(rng) < policy.epsilon) return maneuver_at(uniform_index(rng, 3));
            return greedy_move(s, player, ctx);
        case PlayoutKind::MatrixGame: return mg_tactic(s, player, ctx, rng);
    }
    return Maneuver::Straight;
}

/// Both players' playout moves from the same state. Player 1 draws first.
/// The matrix-game branch shares the nine successor evaluations.
inline JointManeuver playout_joint(const GameState& s, const PlayoutPolicy& policy,
                                   const GameContext& ctx, Rng& rng) {
    if (policy.kind == PlayoutKind::MatrixGame) {
        const PayoffPair payoffs = build_payoffs(s, ctx);
        const MixedStrategy s1 = solve_maxmin(payoffs.p1);
        const MixedStrategy s2 = solve_maxmin(payoffs.p2);
        const Maneuver m1 = maneuver_at(sample_strategy(s1, rng));
        const Maneuver m2 = maneuver_at(sample_strategy(s2, rng));
        return {m1, m2};
    }
    const Maneuver m1 = playout_move(s, Player::One, policy, ctx, rng);
    const Maneuver m2 = playout_move(s, Player::Two, policy, ctx, rng);
    return {m1, m2};
}

struct PlayoutReturn {
    double r1 = 0.0;
    double r2 = 0.0;
    int evaluated = 0;  // number of states summed
};

/// Discounted shaped return sum_{k<K} gamma^k u_i(x(k)) with x(0) the leaf.
/// Stops after t_sim evaluated states or at the first terminal one.
inline PlayoutReturn simulate(GameState state, const SearchConfig& config, const GameContext& ctx,
                              Rng& rng) {
    PlayoutReturn out;
    double disc = 1.0;
    for (int k = 0; k < config.t_sim; ++k) {
        const ShapedEvaluation e = evaluate(state, ctx.eng);
        out.r1 += disc * e.u1;
        out.r2 += disc * e.u2;
        ++out.evaluated;
        if (is_terminal(e.outcome)) {
            if (config.absorbing_terminal) {
                for (int rest = k + 1; rest < config.t_sim; ++rest) {
                    disc *= ctx.eng.gamma();
                    out.r1 += disc * e.u1;
                    out.r2 += disc * e.u2;
                }
            }
            break;
        }
        if (k + 1 == config.t_sim) break;
        state = ctx.transition(state, playout_joint(state, config.playout, ctx, rng));
        disc *= ctx.eng.gamma();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree

inline constexpr int kJointActions = 9;

/// Joint actions are indexed player-1-major: 3 * m1 + m2.
constexpr int joint_index(JointManeuver j) { return 3 * index_of(j.m1) + index_of(j.m2); }
constexpr JointManeuver joint_at(int i) { return {maneuver_at(i / 3), maneuver_at(i % 3)}; }

struct EdgeStats {
    std::int64_t visits = 0;
    double q1 = 0.0;
    double q2 = 0.0;
};

struct TreeNode {
    GameState state;
    Outcome outcome = Outcome::Ongoing;
    std::int64_t visits = 0;
    double q1 = 0.0;
    double q2 = 0.0;
    int parent = -1;
    int via = -1;  // joint index of the edge from the parent
    std::array<int, kJointActions> children{};
    /// Statistics per joint action. For an expanded child they mirror the
    /// child's (visits, q1, q2); at the root they also collect the playouts
    /// of post-growth passes.
    std::array<EdgeStats, kJointActions> edges{};
    std::vector<int> untried;

    bool terminal() const { return is_terminal(outcome); }
    bool fully_expanded() const { return untried.empty(); }
};

/// Per-player marginal statistics at a node: for each own action, the sum
/// over the opponent's actions of child visits and accumulated rewards.
struct NodeStats {
    std::array<Maneuver, 3> actions = kManeuvers;
    std::array<double, 3> q{};            // raw mean return, NaN when n == 0
    std::array<std::int64_t, 3> n{};
    std::int64_t total = 0;
};

class SmctsSearch {
public:
    SmctsSearch(const GameContext& ctx, const SearchConfig& config)
        : ctx_(ctx), config_(config),
          scale_(RewardScale::for_playouts(ctx.eng, config.t_sim)) {
        config_.validate();
    }

    const SearchConfig& config() const { return config_; }
    const RewardScale& scale() const { return scale_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& root() const { return nodes_.front(); }
    int size() const { return static_cast<int>(nodes_.size()); }

    /// Grows a fresh tree at `root_state` and returns the searcher's robust
    /// marginal move: most visited, equal counts to the higher mean return,
    /// then to the lowest index. Without any
    /// root statistics the move is uniform random.
    Maneuver search(const GameState& root_state, Player searcher, Rng& rng) {
        reset(root_state, rng);
        if (root().terminal()) throw std::invalid_argument("search on terminal state");

        // Passes through terminal nodes add nothing; cap them so a tree that
        // cannot reach m_tree still stops.
        const int max_growth_passes = 4 * config_.m_tree + 16;
        for (int pass = 0; size() < config_.m_tree && pass < max_growth_passes; ++pass)
            iterate(rng, true);
        for (int i = 0; i < config_.extra_iterations; ++i) iterate(rng, false);

        const NodeStats stats = marginal_stats(0, searcher);
        if (stats.total == 0) return maneuver_at(uniform_index(rng, 3));
        int best = 0;
        for (int j = 1; j < 3; ++j) {
            const bool more = stats.n[j] > stats.n[best];
            const bool tie_better = stats.n[j] == stats.n[best] && stats.q[j] > stats.q[best];
            if (more || tie_better) best = j;
        }
        return maneuver_at(best);
    }

    /// Fresh single-node tree. Exposed for step-by-step tests.
    void reset(const GameState& root_state, Rng& rng) {
        nodes_.clear();
        add_node(root_state, -1, -1, rng);
    }

    /// One select/expand/simulate/backup pass. With `grow` false the tree
    /// keeps its shape: a joint action is selected at the root and a playout
    /// runs from that successor, counted on the root's edge only.
    void iterate(Rng& rng, bool grow) {
        if (!grow) {
            const int joint = best_joint(0, rng);
            const GameState next = ctx_.transition(nodes_[0].state, joint_at(joint));
            const PlayoutReturn r = simulate(next, config_, ctx_, rng);
            EdgeStats& e = nodes_[0].edges[joint];
            ++e.visits;
            e.q1 += r.r1;
            e.q2 += r.r2;
            backup(0, r.r1, r.r2);
            return;
        }
        const int leaf = selection(0, rng);
        const PlayoutReturn r = simulate(nodes_[leaf].state, config_, ctx_, rng);
        backup(leaf, r.r1, r.r2);
    }

    /// Descends from `node` while fully expanded and non-terminal; expands
    /// the first node with untried actions. Returns the leaf index.
    int selection(int node, Rng& rng) {
        while (!nodes_[node].terminal()) {
            if (!nodes_[node].fully_expanded()) return expand(node, rng);
            node = nodes_[node].children[best_joint(node, rng)];
        }
        return node;
    }

    /// Adds the child for the first untried joint action.
    int expand(int node, Rng& rng) {
        TreeNode& parent = nodes_[node];
        if (parent.untried.empty()) throw std::logic_error("expand: no untried actions");
        const int joint = parent.untried.front();
        parent.untried.erase(parent.untried.begin());
        const GameState next = ctx_.transition(parent.state, joint_at(joint));
        const int child = add_node(next, node, joint, rng);
        nodes_[node].children[joint] = child;
        return child;
    }

    /// Adds (d1, d2) and one visit to every node from `leaf` to the root.
    void backup(int leaf, double d1, double d2) {
        for (int node = leaf; node >= 0; node = nodes_[node].parent) {
            TreeNode& n = nodes_[node];
            ++n.visits;
            n.q1 += d1;
            n.q2 += d2;
            if (n.parent >= 0) {
                EdgeStats& e = nodes_[n.parent].edges[n.via];
                ++e.visits;
                e.q1 += d1;
                e.q2 += d2;
            }
        }
    }

    NodeStats marginal_stats(int node, Player player) const {
        NodeStats s;
        std::array<double, 3> sum{};
        for (int joint = 0; joint < kJointActions; ++joint) {
            const EdgeStats& e = nodes_[node].edges[joint];
            const int own = player == Player::One ? joint / 3 : joint % 3;
            s.n[own] += e.visits;
            sum[own] += player == Player::One ? e.q1 : e.q2;
        }
        for (int j = 0; j < 3; ++j) {
            s.q[j] = s.n[j] > 0 ? sum[j] / static_cast<double>(s.n[j])
                                : std::numeric_limits<double>::quiet_NaN();
            s.total += s.n[j];
        }
        return s;
    }

    /// Decoupled choice: each player maximizes its own bandit index over its
    /// marginals. Ties go to the lowest action index.
    int best_joint(int node, Rng& rng) const {
        const int a1 = select_action(marginal_stats(node, Player::One), rng);
        const int a2 = select_action(marginal_stats(node, Player::Two), rng);
        return 3 * a1 + a2;
    }

    /// Child node chosen by best_joint; requires that child to exist.
    int best_child(int node, Rng& rng) const {
        const int child = nodes_[node].children[best_joint(node, rng)];
        if (child < 0) throw std::logic_error("best_child: selected child not expanded");
        return child;
    }

private:
    int select_action(const NodeStats& s, Rng& rng) const {
        std::array<double, 3> score{};
        for (int j = 0; j < 3; ++j) {
            const double q = s.n[j] > 0 ? scale_.normalize(s.q[j]) : 0.0;
            if (const auto* u = std::get_if<Ucb1>(&config_.selection))
                score[j] = ucb1_index(q, s.n[j], s.total, u->c);
            else {
                const auto& t = std::get<Thompson>(config_.selection);
                score[j] = thompson_index(q, s.n[j], t.c1, t.c2, rng);
            }
        }
        int best = 0;
        for (int j = 1; j < 3; ++j)
            if (score[j] > score[best]) best = j;
        return best;
    }

    int add_node(const GameState& state, int parent, int via, Rng& rng) {
        TreeNode n;
        n.state = state;
        n.outcome = check_terminal(state, ctx_.eng);
        n.parent = parent;
        n.via = via;
        n.children.fill(-1);
        if (!n.terminal()) {
            n.untried.resize(kJointActions);
            for (int j = 0; j < kJointActions; ++j) n.untried[j] = j;
            if (config_.shuffle_expansion)
                for (int j = kJointActions - 1; j > 0; --j)
                    std::swap(n.untried[j], n.untried[uniform_index(rng, j + 1)]);
        }
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    GameContext ctx_;
    SearchConfig config_;
    RewardScale scale_;
    std::vector<TreeNode> nodes_;
};

/// Convenience wrapper: one independent search for `searcher`.
inline Maneuver search(const GameState& root_state, Player searcher, const SearchConfig& config,
                       const GameContext& ctx, Rng& rng) {
    SmctsSearch engine(ctx, config);
    return engine.search(root_state, searcher, rng);
}

}  // namespace acm
