#pragma once

#include <cmath>
#include <numbers>

#include "igs/model.hpp"

namespace igs {

/// Circularity coefficients seen at the primary receiver: of the full
/// received signal and of the interference-plus-noise part. Both vanish as
/// the secondary power goes to zero and approach the transmit circularity as
/// interference dominates.
struct PuRxCircularity {
    double received;            ///< circularity of the aggregate received signal
    double interference;        ///< circularity of interference plus noise
};

inline PuRxCircularity pu_rx_circularity(const ScenarioParams& sc, const ChannelRealization& ch,
                                         const SignalingDesign& design) {
    const double qg2 = design.power * ch.g2();
    if (qg2 <= 0) return {0.0, 0.0};  // no interference reaches the PU: aggregate stays proper
    const double ph2 = sc.pu_tx_power * ch.h2();
    const double s2 = sc.noise_variance;
    return {design.circularity / (1.0 + (ph2 + s2) / qg2),
            design.circularity / (1.0 + s2 / qg2)};
}

/// Primary-user rate under secondary interference with circularity kappa.
/// The proper-interference log term picks up a correction of
/// (1/2) log2((1 - k_rx^2)/(1 - k_in^2)), which is nonnegative: an improper
/// interferer is easier to decode around than a proper one of equal power.
inline double pu_rate(const ScenarioParams& sc, const ChannelRealization& ch, const SignalingDesign& design) {
    const double s2 = sc.noise_variance;
    const double ph2 = sc.pu_tx_power * ch.h2();
    const double qg2 = design.power * ch.g2();
    double rate = std::log1p(ph2 / (s2 + qg2)) * std::numbers::log2e;
    if (qg2 > 0 && design.circularity > 0) {
        // (1 - k_rx^2)/(1 - k_in^2) expanded into ratios of positive sums so
        // it stays well conditioned as kappa -> 1 or q -> infinity:
        // with a = (p|h|^2 + s2)/|g|^2 and b = s2/|g|^2,
        //   ratio = [(q(1-k)+a)(q(1+k)+a)(q+b)^2] / [(q+a)^2 (q(1-k)+b)(q(1+k)+b)]
        const double a = (ph2 + s2) / ch.g2();
        const double b = s2 / ch.g2();
        const double q = design.power;
        const double k = design.circularity;
        const double ratio = ((q * (1.0 - k) + a) / (q * (1.0 - k) + b)) *
                             ((q * (1.0 + k) + a) / (q * (1.0 + k) + b)) *
                             ((q + b) / (q + a)) * ((q + b) / (q + a));
        rate += 0.5 * std::log2(ratio);
    }
    return rate;
}

/// Secondary-user rate for transmit power q and circularity kappa over its
/// own link, treating the primary signal as proper Gaussian noise.
inline double su_rate(const ScenarioParams& sc, const ChannelRealization& ch, const SignalingDesign& design) {
    const double sigma_tilde2 = sc.noise_variance + sc.pu_tx_power * ch.d2();
    const double x = design.power * ch.f2() / sigma_tilde2;
    const double k = design.circularity;
    return 0.5 * std::log1p(x * ((1.0 - k) * (1.0 + k) * x + 2.0)) * std::numbers::log2e;
}

/// Both rates plus the slack of the PU rate constraint under one design.
inline RateReport evaluate_design(const ScenarioParams& sc, const ChannelRealization& ch,
                                  const SignalingDesign& design) {
    const DerivedQuantities dq = derive(sc, ch);
    RateReport report;
    report.r_pu = pu_rate(sc, ch, design);
    report.r_su = su_rate(sc, ch, design);
    report.design = design;
    report.constraint_slack = report.r_pu - sc.loading_factor * dq.r_pu_max;
    return report;
}

}  // namespace igs
