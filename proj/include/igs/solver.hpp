#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "igs/model.hpp"
#include "igs/rates.hpp"

namespace igs {

/// How the secondary's optimum was reached.
enum class Regime {
    unconstrained,            ///< full proper power never threatens the PU (q(0) >= Q)
    proper_optimal,           ///< constraint binds but impropriety buys nothing
    max_improper,             ///< kappa* = 1, tolerated power q(1) fits the budget
    power_limited_improper,   ///< kappa* < 1 chosen so the tolerated power equals the budget
};

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::unconstrained: return "UNCONSTRAINED";
        case Regime::proper_optimal: return "PROPER_OPTIMAL";
        case Regime::max_improper: return "MAX_IMPROPER";
        case Regime::power_limited_improper: return "POWER_LIMITED_IMPROPER";
    }
    return "UNKNOWN";
}

/// The solver's answer for one scenario and channel draw.
struct StrategyDecision {
    bool improper_beneficial;   ///< the benefit inequality, evaluated unconditionally
    double circularity_opt;     ///< kappa*, 0 when proper is (weakly) optimal
    double power_opt;           ///< chosen transmit power, always <= Q
    double r_su_proper;         ///< baseline rate: kappa = 0 at power min(q(0), Q)
    double r_su_improper;       ///< rate of the returned strategy, >= r_su_proper
    Regime regime;
    double benefit_ratio;       ///< |g|^2 sigma_tilde^2 / (|f|^2 sigma^2)
    double benefit_threshold;   ///< beta; improper pays off iff benefit_ratio > beta
};

/// Largest secondary power that keeps the PU at its rate target under proper
/// (kappa = 0) signaling. Returns `unbounded` when the target is zero or the
/// interfering link is dead; the result is not capped by the budget.
inline double allowed_power_proper(const ScenarioParams& sc, const ChannelRealization& ch) {
    const DerivedQuantities dq = derive(sc, ch);
    if (sc.loading_factor * dq.r_pu_max <= 0 || ch.g2() <= 0) return unbounded;
    const double snr_at_target = dq.required_snr(sc.loading_factor);
    return sc.noise_variance / ch.g2() * (dq.snr_pu / snr_at_target - 1.0);
}

/// Largest secondary power that keeps the PU at its rate target when the
/// secondary transmits with circularity kappa. Increasing in kappa. At
/// kappa = 1 this is the analytic limit of the closed form: finite when the
/// benefit threshold is positive, `unbounded` otherwise (a maximally improper
/// interferer then leaves the PU enough rate at any power).
inline double allowed_power(const ScenarioParams& sc, const ChannelRealization& ch, double circularity) {
    if (!(circularity >= 0 && circularity <= 1))
        throw std::invalid_argument("allowed_power: circularity must lie in [0,1]");
    const DerivedQuantities dq = derive(sc, ch);
    if (sc.loading_factor * dq.r_pu_max <= 0 || ch.g2() <= 0) return unbounded;

    const double beta = dq.benefit_threshold;
    const double c = dq.required_snr(2.0) / dq.required_snr(2.0 * sc.loading_factor) - 1.0;  // >= 0
    const double u = (1.0 - circularity) * (1.0 + circularity);                              // 1 - kappa^2
    const double scale = sc.noise_variance / ch.g2();
    // Two algebraically equal forms of the same root, picked by the sign of
    // beta so the subtraction never cancels. The rationalized one also gives
    // the kappa = 1 limit directly.
    if (beta > 0) return scale * c / (std::sqrt(beta * beta + u * c) + beta);
    if (u <= 0) return unbounded;
    return scale * (std::sqrt(beta * beta + u * c) - beta) / u;
}

/// Secondary rate as a function of circularity alone, with the power pinned
/// to the tolerated maximum allowed_power(kappa). Evaluated in the reduced
/// form whose bracket is linear in the tolerated power. Returns `unbounded`
/// when the tolerated power is unbounded.
inline double constrained_su_rate(const ScenarioParams& sc, const ChannelRealization& ch, double circularity) {
    const double q = allowed_power(sc, ch, circularity);
    if (is_unbounded(q)) return unbounded;
    const DerivedQuantities dq = derive(sc, ch);
    const double c = dq.required_snr(2.0) / dq.required_snr(2.0 * sc.loading_factor) - 1.0;
    const double f2 = ch.f2();
    const double ratio = f2 * sc.noise_variance / (ch.g2() * dq.sigma_tilde2);  // 1 / benefit_ratio
    const double bracket =
        2.0 * q * f2 / dq.sigma_tilde2 * (1.0 - dq.benefit_threshold * ratio) + ratio * ratio * c + 1.0;
    return 0.5 * std::log2(bracket);
}

/// The benefit inequality: transmitting improper signals raises the
/// constrained secondary rate iff the interference-to-direct-link ratio
/// |g|^2 sigma_tilde^2 / (|f|^2 sigma^2) exceeds the threshold beta.
/// An exact tie counts as not beneficial (the rate is then flat in kappa).
inline bool improper_beneficial(const ScenarioParams& sc, const ChannelRealization& ch) {
    const DerivedQuantities dq = derive(sc, ch);
    return ch.g2() * dq.sigma_tilde2 / (ch.f2() * sc.noise_variance) > dq.benefit_threshold;
}

/// Optimal circularity when impropriety pays and the proper power limit is
/// below the budget: 1 if the tolerated power at kappa = 1 fits the budget,
/// otherwise the kappa at which the tolerated power exactly equals it.
inline double optimal_circularity(const ScenarioParams& sc, const ChannelRealization& ch) {
    const double q0 = allowed_power_proper(sc, ch);
    if (!(q0 < sc.su_power_budget))
        throw std::logic_error("optimal_circularity: constraint does not bind (allowed proper power >= budget)");
    if (!improper_beneficial(sc, ch))
        throw std::logic_error("optimal_circularity: improper signaling is not beneficial for this channel");
    if (allowed_power(sc, ch, 1.0) <= sc.su_power_budget) return 1.0;

    const DerivedQuantities dq = derive(sc, ch);
    const double c = dq.required_snr(2.0) / dq.required_snr(2.0 * sc.loading_factor) - 1.0;
    const double s = sc.noise_variance / (sc.su_power_budget * ch.g2());
    const double radicand = 1.0 - s * (c * s - 2.0 * dq.benefit_threshold);
    // The root is a genuine kappa^2 in (0,1); only float noise at a regime
    // boundary may push it outside.
    if (radicand < -1e-12 || radicand > 1.0 + 1e-12)
        throw std::logic_error("optimal_circularity: radicand outside [0,1] beyond tolerance");
    return std::sqrt(std::clamp(radicand, 0.0, 1.0));
}

/// Full decision: picks (power, circularity) maximizing the secondary rate
/// subject to the PU rate target and the power budget, and reports the
/// proper baseline alongside.
inline StrategyDecision select_strategy(const ScenarioParams& sc, const ChannelRealization& ch) {
    const DerivedQuantities dq = derive(sc, ch);
    const double budget = sc.su_power_budget;
    const double q0 = allowed_power_proper(sc, ch);
    const double proper_power = std::min(q0, budget);
    const double r_proper = su_rate(sc, ch, {proper_power, 0.0});

    StrategyDecision dec;
    dec.benefit_ratio = ch.g2() * dq.sigma_tilde2 / (ch.f2() * sc.noise_variance);
    dec.benefit_threshold = dq.benefit_threshold;
    dec.improper_beneficial = dec.benefit_ratio > dec.benefit_threshold;
    dec.circularity_opt = 0.0;
    dec.power_opt = proper_power;
    dec.r_su_proper = r_proper;
    dec.r_su_improper = r_proper;

    if (q0 >= budget) {
        // The budget binds before the PU does; at fixed power the rate falls
        // with kappa, so full proper power is optimal.
        dec.regime = Regime::unconstrained;
        return dec;
    }
    if (!dec.improper_beneficial) {
        dec.regime = Regime::proper_optimal;
        return dec;
    }

    const double kappa = optimal_circularity(sc, ch);
    const double power = std::min(allowed_power(sc, ch, kappa), budget);
    const Regime regime = kappa == 1.0 ? Regime::max_improper : Regime::power_limited_improper;
    const double r_improper = su_rate(sc, ch, {power, kappa});
    if (!(r_improper > r_proper)) {
        // Degenerate flat cases (loading factor 1, or the benefit inequality
        // holding with no slack): tolerated power does not grow with kappa,
        // so keep the simpler proper transmitter.
        dec.regime = Regime::proper_optimal;
        return dec;
    }
    dec.circularity_opt = kappa;
    dec.power_opt = power;
    dec.r_su_improper = r_improper;
    dec.regime = regime;
    return dec;
}

}  // namespace igs
