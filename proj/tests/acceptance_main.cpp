// Acceptance suite: end-to-end checks of the closed forms against brute
// force and of the Monte Carlo reproduction targets, one pass/fail line per
// criterion. Exits with the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "igs/igs.hpp"
#include "support.hpp"

using namespace igs;
using igs::test::random_scenario;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

constexpr std::uint64_t acceptance_seed = 20240809;

double rel_dev(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

// ---- closed form vs brute force -------------------------------------------

Outcome power_agreement() {
    std::mt19937_64 rng(acceptance_seed);
    double max_dev = 0.0;
    long long compared = 0, classification_errors = 0;
    for (int i = 0; i < 10000; ++i) {
        auto [sc, ch] = random_scenario(rng);
        const double cap = std::max(sc.su_power_budget, 10.0 * sc.su_power_budget) * 1e3;
        for (double kappa : {0.0, 0.25, 0.5, 0.75, 0.99}) {
            const double closed = allowed_power(sc, ch, kappa);
            const double found = oracle::max_feasible_power(sc, ch, kappa);
            if (std::isfinite(closed) && std::isfinite(found)) {
                max_dev = std::max(max_dev, rel_dev(closed, found));
                ++compared;
            } else if (is_unbounded(found) != is_unbounded(closed)) {
                // the search cannot see past its cap; a finite closed form
                // beyond the cap is the same answer
                const double finite_side = std::isfinite(closed) ? closed : found;
                if (finite_side < cap * (1.0 - 1e-9)) ++classification_errors;
            }
        }
    }
    std::ostringstream ss;
    ss << "max rel deviation " << max_dev << " over " << compared << " finite pairs, "
       << classification_errors << " unbounded-classification disagreements";
    return {max_dev < 1e-9 && classification_errors == 0, ss.str()};
}

Outcome constraint_tightness() {
    std::mt19937_64 rng(acceptance_seed);
    double max_dev = 0.0;
    long long checked = 0;
    for (int i = 0; i < 10000; ++i) {
        auto [sc, ch] = random_scenario(rng);
        const double target = sc.loading_factor * derive(sc, ch).r_pu_max;
        for (double kappa : {0.0, 0.25, 0.5, 0.75, 0.99}) {
            const double q = allowed_power(sc, ch, kappa);
            if (!(std::isfinite(q) && q <= sc.su_power_budget)) continue;
            max_dev = std::max(max_dev, std::abs(pu_rate(sc, ch, {q, kappa}) - target));
            ++checked;
        }
    }
    std::ostringstream ss;
    ss << "max |PU rate - target| " << max_dev << " bits over " << checked << " binding cases";
    return {max_dev < 1e-9, ss.str()};
}

Outcome proper_power_identity() {
    std::mt19937_64 rng(acceptance_seed + 1);
    double max_dev = 0.0;
    long long mismatched_sentinels = 0;
    for (int i = 0; i < 10000; ++i) {
        auto [sc, ch] = random_scenario(rng);
        const double q0 = allowed_power_proper(sc, ch);
        const double qk0 = allowed_power(sc, ch, 0.0);
        if (is_unbounded(q0) != is_unbounded(qk0)) {
            ++mismatched_sentinels;
            continue;
        }
        if (std::isfinite(q0)) max_dev = std::max(max_dev, rel_dev(q0, qk0));
    }
    std::ostringstream ss;
    ss << "max rel deviation " << max_dev << ", sentinel mismatches " << mismatched_sentinels;
    return {max_dev < 1e-10 && mismatched_sentinels == 0, ss.str()};
}

Outcome decision_correctness() {
    std::mt19937_64 rng(acceptance_seed + 2);
    oracle::OracleConfig cfg;  // 1001-point grid
    const double step = 1.0 / (cfg.kappa_grid_steps - 1);
    long long cases = 0, sign_mismatches = 0, kappa_mismatches = 0;
    double worst_rate_gap = 0.0;
    while (cases < 1000) {
        auto [sc, ch] = random_scenario(rng);
        const double q0 = allowed_power_proper(sc, ch);
        if (!(q0 < sc.su_power_budget)) continue;  // the benefit condition only applies when the constraint binds
        ++cases;
        const bool beneficial = improper_beneficial(sc, ch);
        const auto best = oracle::grid_search_optimum(sc, ch, cfg);
        const double r_proper = su_rate(sc, ch, {q0, 0.0});
        const double improvement = best.r_su - r_proper;
        if (beneficial != (improvement > 1e-12)) ++sign_mismatches;

        const StrategyDecision dec = select_strategy(sc, ch);
        const double kappa_star = dec.circularity_opt;
        if (std::abs(best.circularity - kappa_star) > step + 1e-12) ++kappa_mismatches;
        worst_rate_gap = std::max(worst_rate_gap, best.r_su - dec.r_su_improper);
    }
    std::ostringstream ss;
    ss << cases << " cases: " << sign_mismatches << " benefit-sign mismatches, " << kappa_mismatches
       << " argmax mismatches beyond one grid step, worst closed-form shortfall " << worst_rate_gap
       << " bits";
    return {sign_mismatches == 0 && kappa_mismatches == 0 && worst_rate_gap < 1e-6, ss.str()};
}

// ---- Monte Carlo reproduction ----------------------------------------------

struct FigureGains {
    std::vector<double> max_gain_pct;   // per PU SNR point
    bool fraction_always_one;
    SweepResult sweep;
};

FigureGains figure_gains(double alpha) {
    ExperimentConfig cfg;
    cfg.alpha = alpha;
    cfg.snr_pu_db = {10.0, 20.0, 30.0};
    cfg.snr_su_db.clear();
    for (int i = 0; i <= 12; ++i) cfg.snr_su_db.push_back(2.5 * i);
    cfg.trials = 100000;
    cfg.seed = acceptance_seed;
    FigureGains fig;
    fig.sweep = run_sweep(cfg);
    fig.fraction_always_one = true;
    const std::size_t n_su = cfg.snr_su_db.size();
    for (std::size_t pu = 0; pu < cfg.snr_pu_db.size(); ++pu) {
        double best = 0.0;
        for (std::size_t j = 0; j < n_su; ++j) {
            const SweepPoint& p = fig.sweep.points[pu * n_su + j];
            best = std::max(best, p.relative_gain_pct);
            if (p.fraction_improper_beneficial != 1.0) fig.fraction_always_one = false;
        }
        fig.max_gain_pct.push_back(best);
    }
    return fig;
}

std::string gains_to_string(const std::vector<double>& gains) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < gains.size(); ++i) ss << (i ? "/" : "") << gains[i];
    return ss.str();
}

const FigureGains& fig_alpha08() {
    static const FigureGains fig = figure_gains(0.8);
    return fig;
}

const FigureGains& fig_alpha05() {
    static const FigureGains fig = figure_gains(0.5);
    return fig;
}

Outcome figure2_reproduction() {
    const FigureGains& fig = fig_alpha08();
    const double targets[] = {9.0, 23.0, 56.0};
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && std::abs(fig.max_gain_pct[i] - targets[i]) <= 3.0;
    return {ok, "max gains " + gains_to_string(fig.max_gain_pct) + " % vs 9/23/56 % (tol 3 pp)"};
}

Outcome figure3_reproduction() {
    const FigureGains& fig = fig_alpha05();
    const double targets[] = {292.0, 297.0, 256.0};
    bool ok = fig.fraction_always_one;
    for (int i = 0; i < 3; ++i) ok = ok && std::abs(fig.max_gain_pct[i] - targets[i]) <= 25.0;
    return {ok, "max gains " + gains_to_string(fig.max_gain_pct) + " % vs 292/297/256 % (tol 25 pp), " +
                    (fig.fraction_always_one ? "benefit fraction 1.0 everywhere"
                                             : "benefit fraction below 1.0 somewhere")};
}

Outcome loading_order() {
    const FigureGains& light = fig_alpha05();
    const FigureGains& heavy = fig_alpha08();
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && light.max_gain_pct[i] > heavy.max_gain_pct[i];
    return {ok, "per-PU-SNR max gains: alpha 0.5 " + gains_to_string(light.max_gain_pct) +
                    " % vs alpha 0.8 " + gains_to_string(heavy.max_gain_pct) + " %"};
}

// ---- property suite ---------------------------------------------------------

Outcome property_suite() {
    std::mt19937_64 rng(acceptance_seed + 3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::ostringstream issues;

    // rate monotonicities via finite differences
    for (int i = 0; i < 1000; ++i) {
        auto [sc, ch] = random_scenario(rng, 1e-3);
        const double q = std::pow(10.0, 3.0 * unif(rng) - 1.0);
        const double k = 0.05 + 0.85 * unif(rng);
        if (!(su_rate(sc, ch, {q * 1.01, k}) > su_rate(sc, ch, {q, k})))
            issues << "su_rate not increasing in power; ";
        if (!(su_rate(sc, ch, {q, k + 0.05}) < su_rate(sc, ch, {q, k})))
            issues << "su_rate not decreasing in circularity; ";
        if (!(pu_rate(sc, ch, {q, k + 0.05}) > pu_rate(sc, ch, {q, k})))
            issues << "pu_rate not increasing in circularity; ";
        if (!(pu_rate(sc, ch, {q * 1.02, k}) < pu_rate(sc, ch, {q, k})))
            issues << "pu_rate not decreasing in power; ";
        if (issues.tellp() > 0) break;
    }

    // tolerated power nondecreasing in circularity; received-circularity ordering
    for (int i = 0; i < 1000 && issues.tellp() == 0; ++i) {
        auto [sc, ch] = random_scenario(rng, 1e-6);
        double prev = allowed_power(sc, ch, 0.0);
        for (int j = 1; j <= 10; ++j) {
            const double next = allowed_power(sc, ch, j / 10.0);
            if (is_unbounded(next)) break;
            if (!(next >= prev * (1.0 - 1e-12))) {
                issues << "allowed_power not nondecreasing; ";
                break;
            }
            prev = next;
        }
        const double kappa = unif(rng);
        const auto rx = pu_rx_circularity(sc, ch, {unif(rng) * 50.0, kappa});
        if (!(rx.interference >= 0 && rx.interference <= kappa && rx.received <= rx.interference))
            issues << "received-circularity ordering violated; ";
    }

    // quadratic residuals of both rate identities
    for (int i = 0; i < 1000 && issues.tellp() == 0; ++i) {
        auto [sc, ch] = random_scenario(rng, 1e-6);
        const double q = std::pow(10.0, 3.0 * unif(rng) - 1.0);
        const double k = unif(rng);
        const double qg2 = q * ch.g2();
        const double ph2 = sc.pu_tx_power * ch.h2();
        const double lhs_pu = std::exp2(2.0 * pu_rate(sc, ch, {q, k}));
        const double num = (qg2 + ph2 + 1.0) / qg2;
        const double den = (qg2 + 1.0) / qg2;
        const double rhs_pu = (num * num - k * k) / (den * den - k * k);
        if (rel_dev(lhs_pu, rhs_pu) > 1e-10) issues << "PU rate identity residual; ";

        const double st2 = 1.0 + sc.pu_tx_power * ch.d2();
        const double lhs_su = std::exp2(2.0 * su_rate(sc, ch, {q, k}));
        const double rhs_su = ch.f2() * ch.f2() / (st2 * st2) * (1.0 - k * k) * q * q +
                              2.0 * q * ch.f2() / st2 + 1.0;
        if (rel_dev(lhs_su, rhs_su) > 1e-10) issues << "SU rate identity residual; ";

        const double kq = unif(rng) * 0.999;
        const double qk = allowed_power(sc, ch, kq);
        if (std::isfinite(qk)) {
            const DerivedQuantities dq = derive(sc, ch);
            const double c = dq.required_snr(2.0) / dq.required_snr(2.0 * sc.loading_factor) - 1.0;
            const double lhs = qk * qk * ch.g2() * ch.g2() * (1.0 - kq * kq);
            const double rhs = 1.0 * (c - 2.0 * ch.g2() * dq.benefit_threshold * qk);
            if (std::abs(lhs - rhs) > 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1e-300}))
                issues << "tolerated-power quadratic residual; ";
        }
    }

    // determinism: identical configs serialize byte-identically
    {
        ExperimentConfig cfg;
        cfg.alpha = 0.8;
        cfg.snr_pu_db = {10.0};
        cfg.snr_su_db = {0.0, 10.0, 20.0};
        cfg.trials = 500;
        cfg.seed = 99;
        std::ostringstream a, b;
        write_csv(a, run_sweep(cfg).points);
        write_csv(b, run_sweep(cfg).points);
        if (a.str() != b.str() || a.str().empty()) issues << "sweep serialization not deterministic; ";
    }

    // per-trial dominance under the checked mode
    {
        ExperimentConfig cfg;
        cfg.alpha = 0.9;
        cfg.snr_pu_db = {20.0};
        cfg.snr_su_db = {10.0};
        cfg.trials = 20000;
        cfg.seed = 5;
        cfg.check_dominance = true;
        try {
            run_sweep(cfg);
        } catch (const std::exception& e) {
            issues << "dominance check threw: " << e.what() << "; ";
        }
    }

    const std::string detail = issues.str();
    return {detail.empty(), detail.empty() ? "monotonicities, identities, determinism, dominance" : detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"1. closed-form vs bisection power agreement", power_agreement},
        {"2. PU constraint tightness at the tolerated power", constraint_tightness},
        {"3. proper power limit identity (kappa = 0)", proper_power_identity},
        {"4. benefit condition and optimal circularity vs grid search", decision_correctness},
        {"5. alpha 0.8 sweep gains (9/23/56 %)", figure2_reproduction},
        {"6. alpha 0.5 sweep gains (292/297/256 %), benefit fraction 1", figure3_reproduction},
        {"7. light loading beats heavy loading at every PU SNR", loading_order},
        {"8. property suite (module invariants)", property_suite},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const Outcome outcome = c.run();
        failures += outcome.pass ? 0 : 1;
        std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
