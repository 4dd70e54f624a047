#pragma once

// Reference computations shared by the unit and acceptance suites. They
// avoid the code paths under test: the matrix-game value comes from support
// enumeration, not simplex.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "acm/matrix_game.hpp"

namespace oracle {

/// Solves the square system a x = b by Gaussian elimination with partial
/// pivoting; nullopt when (near) singular.
inline std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

struct Solution {
    std::vector<double> probs;
    double value = -std::numeric_limits<double>::infinity();
};

/// Max-min value of the row player by support enumeration. For every row
/// support S and column set T with |S| = |T|, the strategy on S that makes
/// all columns of T pay the same is a candidate; the best worst-case payoff
/// over feasible candidates is the value.
inline Solution maxmin_by_support_enumeration(const acm::PayoffMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    Solution best;
    for (int smask = 1; smask < (1 << rows); ++smask) {
        std::vector<int> s;
        for (int r = 0; r < rows; ++r)
            if (smask >> r & 1) s.push_back(r);
        const int k = static_cast<int>(s.size());
        for (int tmask = 1; tmask < (1 << cols); ++tmask) {
            std::vector<int> t;
            for (int c = 0; c < cols; ++c)
                if (tmask >> c & 1) t.push_back(c);
            if (static_cast<int>(t.size()) != k) continue;
            // Unknowns p_s; equations: column t0 pays as much as each other
            // column of T, and the probabilities sum to one.
            std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
            std::vector<double> b(k, 0.0);
            for (int e = 1; e < k; ++e)
                for (int i = 0; i < k; ++i) a[e - 1][i] = m(s[i], t[0]) - m(s[i], t[e]);
            for (int i = 0; i < k; ++i) a[k - 1][i] = 1.0;
            b[k - 1] = 1.0;
            const auto x = solve_linear(a, b);
            if (!x) continue;
            std::vector<double> p(rows, 0.0);
            bool feasible = true;
            for (int i = 0; i < k; ++i) {
                if ((*x)[i] < -1e-12) feasible = false;
                p[s[i]] = std::max(0.0, (*x)[i]);
            }
            if (!feasible) continue;
            double worst = std::numeric_limits<double>::infinity();
            for (int c = 0; c < cols; ++c) {
                double e = 0.0;
                for (int r = 0; r < rows; ++r) e += p[r] * m(r, c);
                worst = std::min(worst, e);
            }
            if (worst > best.value) best = {p, worst};
        }
    }
    return best;
}

/// Pure max-min: the row whose worst column is largest (lowest index on ties).
inline int pure_maxmin_row(const acm::PayoffMatrix& m) {
    int best = 0;
    double best_worst = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < m.rows(); ++r) {
        double worst = std::numeric_limits<double>::infinity();
        for (int c = 0; c < m.cols(); ++c) worst = std::min(worst, m(r, c));
        if (worst > best_worst) {
            best_worst = worst;
            best = r;
        }
    }
    return best;
}

/// Aircraft 1's exact one-step values, rows = own maneuver.
inline acm::PayoffMatrix one_step_values(const acm::GameState& s, const acm::GameContext& ctx) {
    acm::PayoffMatrix p(3, 3, std::vector<double>(9));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            p(a, b) = acm::shaped_reward(ctx.transition(s, {acm::maneuver_at(a), acm::maneuver_at(b)}),
                                         acm::Player::One, ctx.eng);
    return p;
}

/// Random non-terminal state with aircraft 1's one-step payoff table
/// cleanly separated: some row's worst entry beats every entry of the other
/// rows by `margin`. Such a state is decided by one-ply lookahead: the
/// separated row is the max-min move against any reply.
inline acm::GameState one_ply_instance(acm::Rng& rng, const acm::GameContext& ctx,
                                       double margin = 0.05) {
    for (;;) {
        acm::GameState s;
        auto aircraft = [&](double v) {
            return acm::AircraftState{(2 * acm::uniform01(rng) - 1) * 6, (2 * acm::uniform01(rng) - 1) * 6, v,
                                      acm::uniform01(rng) * 2 * std::numbers::pi,
                                      (2 * acm::uniform01(rng) - 1) * 0.4};
        };
        s.ac1 = aircraft(ctx.p1.v());
        s.ac2 = aircraft(ctx.p2.v());
        if (acm::is_terminal(acm::check_terminal(s, ctx.eng))) continue;
        const acm::PayoffMatrix p = one_step_values(s, ctx);
        const int r = pure_maxmin_row(p);
        double worst = std::numeric_limits<double>::infinity();
        double others = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < 3; ++c) worst = std::min(worst, p(r, c));
        for (int a = 0; a < 3; ++a)
            if (a != r)
                for (int c = 0; c < 3; ++c) others = std::max(others, p(a, c));
        if (worst > others + margin) return s;
    }
}

/// Random matrix with entries uniform in [lo, hi).
inline acm::PayoffMatrix random_matrix(acm::Rng& rng, int rows, int cols, double lo = -1.0,
                                       double hi = 1.0) {
    std::vector<double> e(rows * cols);
    for (double& x : e) x = lo + (hi - lo) * acm::uniform01(rng);
    return acm::PayoffMatrix(rows, cols, std::move(e));
}

}  // namespace oracle
