#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "acm/engagement.hpp"
#include "acm/rng.hpp"

namespace acm {

/// Dense payoff table from one player's perspective: rows are that player's
/// actions, columns the opponent's.
class PayoffMatrix {
public:
    PayoffMatrix(int rows, int cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows < 1 || cols < 1 || entries_.size() != static_cast<std::size_t>(rows * cols))
            throw std::invalid_argument("PayoffMatrix: shape mismatch");
    }

    PayoffMatrix(std::initializer_list<std::initializer_list<double>> rows)
        : rows_(static_cast<int>(rows.size())),
          cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
        if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("PayoffMatrix: empty matrix");
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw std::invalid_argument("PayoffMatrix: ragged rows");
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double operator()(int r, int c) const { return entries_[r * cols_ + c]; }
    double& operator()(int r, int c) { return entries_[r * cols_ + c]; }

    bool all_finite() const {
        return std::all_of(entries_.begin(), entries_.end(), [](double e) { return std::isfinite(e); });
    }

    /// Payoff table of the opponent in a strictly zero-sum game: -P^T.
    PayoffMatrix negated_transpose() const {
        PayoffMatrix t(cols_, rows_, std::vector<double>(entries_.size()));
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = -(*this)(r, c);
        return t;
    }

private:
    int rows_;
    int cols_;
    std::vector<double> entries_;
};

struct MixedStrategy {
    std::vector<double> probs;
    double value = 0.0;
};

/// Worst-case expected payoff of a row strategy over the opponent's pure
/// replies: min_c sum_r probs[r] * P(r, c).
inline double guarantee(const PayoffMatrix& m, const std::vector<double>& probs) {
    double worst = std::numeric_limits<double>::infinity();
    for (int c = 0; c < m.cols(); ++c) {
        double e = 0.0;
        for (int r = 0; r < m.rows(); ++r) e += probs[r] * m(r, c);
        worst = std::min(worst, e);
    }
    return worst;
}

namespace detail {

/// Dense tableau simplex for  max 1'y  s.t.  A y <= 1, y >= 0  with A > 0.
/// Bland's rule for both entering and leaving choices. Returns the dual
/// prices of the row constraints, whose sum equals the optimum.
class SimplexTableau {
public:
    explicit SimplexTableau(const PayoffMatrix& a)
        : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), t_((m_ + 1) * width_, 0.0),
          basis_(m_) {
        for (int r = 0; r < m_; ++r) {
            for (int c = 0; c < n_; ++c) at(r, c) = a(r, c);
            at(r, n_ + r) = 1.0;
            at(r, width_ - 1) = 1.0;
            basis_[r] = n_ + r;
        }
        for (int c = 0; c < n_; ++c) at(m_, c) = -1.0;
    }

    std::vector<double> solve() {
        constexpr double eps = 1e-12;
        // Bland's rule cannot cycle; the cap only guards against NaN input.
        const int max_pivots = 64 * (m_ + n_ + 1);
        for (int it = 0; it < max_pivots; ++it) {
            int enter = -1;
            for (int c = 0; c < width_ - 1; ++c) {
                if (at(m_, c) < -eps) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) {
                std::vector<double> duals(m_);
                for (int r = 0; r < m_; ++r) duals[r] = std::max(0.0, at(m_, n_ + r));
                return duals;
            }
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m_; ++r) {
                if (at(r, enter) <= eps) continue;
                const double ratio = at(r, width_ - 1) / at(r, enter);
                if (leave < 0 || ratio < best_ratio - eps) {
                    best_ratio = ratio;
                    leave = r;
                } else if (ratio <= best_ratio + eps && basis_[r] < basis_[leave]) {
                    leave = r;
                }
            }
            // Positive entries keep the problem bounded.
            if (leave < 0) throw std::runtime_error("simplex: unbounded program");
            pivot(leave, enter);
        }
        throw std::runtime_error("simplex: pivot limit reached");
    }

private:
    double& at(int r, int c) { return t_[r * width_ + c]; }

    void pivot(int row, int col) {
        const double inv = 1.0 / at(row, col);
        for (int c = 0; c < width_; ++c) at(row, c) *= inv;
        at(row, col) = 1.0;
        for (int r = 0; r <= m_; ++r) {
            if (r == row) continue;
            const double f = at(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < width_; ++c) at(r, c) -= f * at(row, c);
            at(r, col) = 0.0;
        }
        basis_[row] = col;
    }

    int m_;
    int n_;
    int width_;
    std::vector<double> t_;
    std::vector<int> basis_;
};

}  // namespace detail

/// Max-min mixed strategy of the row player:
///   max_p min_c (P^T p)_c   s.t.  p >= 0, sum p = 1.
///
/// Entries are shifted to be >= 1, the column player's LP
/// max 1'y s.t. P y <= 1 is solved by simplex, and the row strategy is read
/// from its dual prices. A constant matrix returns the uniform strategy.
inline MixedStrategy solve_maxmin(const PayoffMatrix& m) {
    if (!m.all_finite()) throw std::invalid_argument("solve_maxmin: non-finite payoff entry");
    double lo = m(0, 0);
    double hi = m(0, 0);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            lo = std::min(lo, m(r, c));
            hi = std::max(hi, m(r, c));
        }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) {
        return {std::vector<double>(m.rows(), 1.0 / m.rows()), lo};
    }

    const double shift = 1.0 - lo;
    PayoffMatrix shifted = m;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) shifted(r, c) += shift;

    std::vector<double> probs = detail::SimplexTableau(shifted).solve();
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= total;
    // The LP optimum 1/total is the shifted value; recompute from the
    // normalized strategy so value and guarantee agree to rounding.
    return {probs, guarantee(m, probs)};
}

/// Index drawn from the strategy using exactly one uniform draw.
inline int sample_strategy(const MixedStrategy& s, Rng& rng) {
    const double u = uniform01(rng);
    double cumulative = 0.0;
    int last_positive = 0;
    for (int j = 0; j < static_cast<int>(s.probs.size()); ++j) {
        if (s.probs[j] <= 0.0) continue;
        cumulative += s.probs[j];
        last_positive = j;
        if (u < cumulative) return j;
    }
    return last_positive;
}

/// The nine successor states of a joint step, indexed [m1][m2]. Each
/// aircraft's three maneuvers are integrated once and combined.
inline std::array<std::array<GameState, 3>, 3> successors(const GameState& s,
                                                          const GameContext& ctx) {
    std::array<AircraftState, 3> next1;
    std::array<AircraftState, 3> next2;
    for (Maneuver m : kManeuvers) {
        next1[index_of(m)] = step_maneuver(s.ac1, m, ctx.p1);
        next2[index_of(m)] = step_maneuver(s.ac2, m, ctx.p2);
    }
    std::array<std::array<GameState, 3>, 3> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out[a][b] = GameState{next1[a], next2[b], s.k + 1};
    return out;
}

/// One-step payoff tables of both players, each from its own perspective
/// (rows = own maneuver, columns = opponent maneuver, order L, S, R).
struct PayoffPair {
    PayoffMatrix p1;
    PayoffMatrix p2;
};

inline PayoffPair build_payoffs(const GameState& s, const GameContext& ctx) {
    const auto next = successors(s, ctx);
    PayoffPair out{PayoffMatrix(3, 3, std::vector<double>(9)),
                   PayoffMatrix(3, 3, std::vector<double>(9))};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const ShapedEvaluation e = evaluate(next[a][b], ctx.eng);
            out.p1(a, b) = e.u1;
            out.p2(b, a) = e.u2;
        }
    return out;
}

inline PayoffMatrix build_payoff(const GameState& s, Player player, const GameContext& ctx) {
    PayoffPair both = build_payoffs(s, ctx);
    return player == Player::One ? std::move(both.p1) : std::move(both.p2);
}

/// One-step matrix-game tactic: payoff table, max-min strategy, one draw.
inline Maneuver mg_tactic(const GameState& s, Player player, const GameContext& ctx, Rng& rng) {
    return maneuver_at(sample_strategy(solve_maxmin(build_payoff(s, player, ctx)), rng));
}

}  // namespace acm
