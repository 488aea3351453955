#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "igs/model.hpp"
#include "igs/rates.hpp"

// Brute-force verifiers for the closed-form solver. Everything here goes
// through the raw rate formulas only; nothing is shared with solver.hpp, so
// agreement between the two is evidence, not tautology.

namespace igs::oracle {

struct OracleConfig {
    int kappa_grid_steps = 1001;         ///< grid points on [0,1], endpoints included
    double q_bisection_tolerance = 1e-12;  ///< relative width at which bisection stops
    int max_bisection_iters = 200;

    void validate() const {
        if (kappa_grid_steps < 2) throw std::invalid_argument("OracleConfig: need at least 2 grid steps");
        if (!(q_bisection_tolerance > 0)) throw std::invalid_argument("OracleConfig: tolerance must be positive");
        if (max_bisection_iters < 1) throw std::invalid_argument("OracleConfig: need at least 1 iteration");
    }
};

/// Largest secondary power keeping the PU rate at or above its target, found
/// by bisection on the monotone-decreasing PU rate. Returns `unbounded` when
/// the constraint still holds at the search cap (1000x the larger of Q and
/// 10 Q). Throws if the rate evaluates to NaN inside the bracket, which would
/// mean the monotone model is broken.
inline double max_feasible_power(const ScenarioParams& sc, const ChannelRealization& ch, double circularity,
                                 const OracleConfig& cfg = {}) {
    cfg.validate();
    if (!(circularity >= 0 && circularity <= 1))
        throw std::invalid_argument("max_feasible_power: circularity must lie in [0,1]");
    const DerivedQuantities dq = derive(sc, ch);
    const double target = sc.loading_factor * dq.r_pu_max;
    if (target <= 0) return unbounded;

    const double cap = std::max(sc.su_power_budget, 10.0 * sc.su_power_budget) * 1e3;
    const auto rate_at = [&](double q) {
        const double r = pu_rate(sc, ch, {q, circularity});
        if (std::isnan(r)) throw std::runtime_error("max_feasible_power: PU rate evaluated to NaN");
        return r;
    };
    if (rate_at(cap) >= target) return unbounded;

    double lo = 0.0;   // feasible: rate_at(0) = r_pu_max >= target
    double hi = cap;   // infeasible
    for (int i = 0; i < cfg.max_bisection_iters && hi - lo > cfg.q_bisection_tolerance * lo; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rate_at(mid) >= target ? lo : hi) = mid;
    }
    return lo;
}

struct GridOptimum {
    double circularity;
    double power;
    double r_su;
};

/// Exhaustive check of the closed-form optimum: sweeps a uniform circularity
/// grid, caps the tolerated power at the budget, and keeps the best rate.
/// Ties break toward smaller circularity, so the result is deterministic.
inline GridOptimum grid_search_optimum(const ScenarioParams& sc, const ChannelRealization& ch,
                                       const OracleConfig& cfg = {}) {
    cfg.validate();
    GridOptimum best{0.0, 0.0, -1.0};
    for (int i = 0; i < cfg.kappa_grid_steps; ++i) {
        const double kappa = static_cast<double>(i) / (cfg.kappa_grid_steps - 1);
        const double tolerated = max_feasible_power(sc, ch, kappa, cfg);
        const double power = std::min(tolerated, sc.su_power_budget);
        const double rate = su_rate(sc, ch, {power, kappa});
        if (rate > best.r_su) best = {kappa, power, rate};
    }
    return best;
}

}  // namespace igs::oracle
