#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "igs/igs.hpp"

namespace igs::test {

struct RandomScenario {
    ScenarioParams scenario;
    ChannelRealization channel;
};

/// Random problem instance: channels CN(0,1), loading factor uniform in
/// [0,1], both SNRs uniform in [0,30] dB, unit noise, PU at full power.
/// `min_gain2` rejects near-dead links for tests that need nondegenerate
/// finite differences.
inline RandomScenario random_scenario(std::mt19937_64& rng, double min_gain2 = 0.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    ChannelRealization ch;
    do {
        ch = sample_channel(rng);
    } while (std::min({ch.h2(), ch.d2(), ch.g2(), ch.f2()}) < min_gain2);
    const double alpha = unif(rng);
    const double pu_power = std::pow(10.0, 3.0 * unif(rng));
    const double su_power = std::pow(10.0, 3.0 * unif(rng));
    return {ScenarioParams(pu_power, su_power, 1.0, alpha), ch};
}

/// Scenario with every squared channel gain and the PU SNR chosen directly;
/// noise variance 1, d = 0 unless given, p = P.
inline RandomScenario fixed_scenario(double snr_pu, double alpha, double su_power, double g2 = 1.0,
                                     double f2 = 1.0, double d2 = 0.0) {
    return {ScenarioParams(snr_pu, su_power, 1.0, alpha),
            ChannelRealization::from_squared_moduli(1.0, d2, g2, f2)};
}

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

}  // namespace igs::test
