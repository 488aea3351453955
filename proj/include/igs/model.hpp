#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace igs {

/// Sentinel returned by the power-limit functions when the primary-user rate
/// constraint can never bind (no finite secondary power violates it).
inline constexpr double unbounded = std::numeric_limits<double>::infinity();

inline bool is_unbounded(double v) { return std::isinf(v) && v > 0; }

/// Static problem data for one underlay scenario. Powers are linear (not dB),
/// the noise variance is the same at both receivers.
struct ScenarioParams {
    double pu_power_budget;  ///< P, primary transmit power budget
    double su_power_budget;  ///< Q, secondary transmit power budget
    double noise_variance;   ///< sigma^2 at both receivers
    double loading_factor;   ///< alpha in [0,1]: fraction of the interference-free PU rate to guarantee
    double pu_tx_power;      ///< p <= P, actual primary transmit power

    ScenarioParams(double pu_budget, double su_budget, double sigma2, double alpha)
        : ScenarioParams(pu_budget, su_budget, sigma2, alpha, pu_budget) {}

    ScenarioParams(double pu_budget, double su_budget, double sigma2, double alpha, double pu_power)
        : pu_power_budget(pu_budget),
          su_power_budget(su_budget),
          noise_variance(sigma2),
          loading_factor(alpha),
          pu_tx_power(pu_power) {
        validate();
    }

    void validate() const {
        if (!(pu_power_budget > 0) || !std::isfinite(pu_power_budget))
            throw std::invalid_argument("ScenarioParams: PU power budget must be positive and finite");
        if (!(su_power_budget > 0) || !std::isfinite(su_power_budget))
            throw std::invalid_argument("ScenarioParams: SU power budget must be positive and finite");
        if (!(noise_variance > 0) || !std::isfinite(noise_variance))
            throw std::invalid_argument("ScenarioParams: noise variance must be positive and finite");
        if (!(loading_factor >= 0 && loading_factor <= 1))
            throw std::invalid_argument("ScenarioParams: loading factor must lie in [0,1]");
        if (!(pu_tx_power > 0) || !(pu_tx_power <= pu_power_budget))
            throw std::invalid_argument("ScenarioParams: PU transmit power must satisfy 0 < p <= P");
    }
};

/// One draw of the four flat-fading gains of the two-user interference
/// channel. Only the squared moduli enter the rate formulas; the phases are
/// kept so realizations can be stored and replayed as sampled.
struct ChannelRealization {
    std::complex<double> h;  ///< PU tx -> PU rx (primary direct link)
    std::complex<double> d;  ///< PU tx -> SU rx (interference into the secondary)
    std::complex<double> g;  ///< SU tx -> PU rx (interference into the primary)
    std::complex<double> f;  ///< SU tx -> SU rx (secondary direct link)

    double h2() const { return std::norm(h); }
    double d2() const { return std::norm(d); }
    double g2() const { return std::norm(g); }
    double f2() const { return std::norm(f); }

    /// Builds a realization from squared moduli only (gains placed on the
    /// real axis). The rate formulas are phase-invariant, so this loses
    /// nothing.
    static ChannelRealization from_squared_moduli(double h2, double d2, double g2, double f2) {
        if (!(h2 >= 0) || !(d2 >= 0) || !(g2 >= 0) || !(f2 >= 0) ||
            !std::isfinite(h2) || !std::isfinite(d2) || !std::isfinite(g2) || !std::isfinite(f2))
            throw std::invalid_argument("ChannelRealization: squared moduli must be finite and nonnegative");
        return {std::complex<double>(std::sqrt(h2), 0.0), std::complex<double>(std::sqrt(d2), 0.0),
                std::complex<double>(std::sqrt(g2), 0.0), std::complex<double>(std::sqrt(f2), 0.0)};
    }

    void validate() const {
        auto finite = [](std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
        if (!finite(h) || !finite(d) || !finite(g) || !finite(f))
            throw std::invalid_argument("ChannelRealization: gains must be finite");
    }
};

/// A secondary-user transmit strategy: power plus the circularity coefficient
/// of the Gaussian transmit signal (0 = proper, 1 = maximally improper).
struct SignalingDesign {
    double power;        ///< q >= 0
    double circularity;  ///< kappa in [0,1]

    void validate() const {
        if (!(power >= 0))
            throw std::invalid_argument("SignalingDesign: power must be nonnegative");
        if (!(circularity >= 0 && circularity <= 1))
            throw std::invalid_argument("SignalingDesign: circularity must lie in [0,1]");
    }
};

namespace detail {

/// (1 + snr)^fraction - 1: the SNR required to reach `fraction` times the
/// interference-free PU rate. The integer exponents that the solver leans on
/// are special-cased so that e.g. fraction 1 reproduces the SNR exactly and
/// loading factor 1/2 makes the benefit threshold exactly zero.
inline double required_snr_from(double fraction, double snr) {
    if (fraction == 0.0) return 0.0;
    if (fraction == 1.0) return snr;
    if (fraction == 2.0) return snr * (snr + 2.0);
    return std::expm1(fraction * std::log1p(snr));
}

}  // namespace detail

/// Per-realization scalars shared by the rate formulas and the solver.
struct DerivedQuantities {
    double snr_pu;             ///< p |h|^2 / sigma^2
    double sigma_tilde2;       ///< sigma^2 + p |d|^2, interference-plus-noise power at the SU receiver
    double r_pu_max;           ///< PU rate without interference, log2(1 + snr_pu)
    double benefit_threshold;  ///< beta = 1 - required_snr(1)/required_snr(2 alpha), <= 1

    /// SNR needed for the PU to reach `fraction` times its interference-free rate.
    double required_snr(double fraction) const { return detail::required_snr_from(fraction, snr_pu); }
};

inline DerivedQuantities derive(const ScenarioParams& sc, const ChannelRealization& ch) {
    DerivedQuantities dq;
    dq.snr_pu = sc.pu_tx_power * ch.h2() / sc.noise_variance;
    dq.sigma_tilde2 = sc.noise_variance + sc.pu_tx_power * ch.d2();
    dq.r_pu_max = std::log1p(dq.snr_pu) / std::numbers::ln2;
    const double denom = dq.required_snr(2.0 * sc.loading_factor);
    // denom == 0 (alpha = 0 or a dead direct link) means the constraint can
    // never bind; any positive ratio clears the threshold.
    dq.benefit_threshold = denom > 0 ? 1.0 - dq.snr_pu / denom : -unbounded;
    return dq;
}

/// Required SNR for a rate fraction `a` of the scenario's interference-free
/// PU rate; increasing in `a`, zero at `a` = 0.
inline double required_snr(double fraction, const ScenarioParams& sc, const ChannelRealization& ch) {
    if (!(fraction >= 0)) throw std::invalid_argument("required_snr: fraction must be nonnegative");
    return detail::required_snr_from(fraction, sc.pu_tx_power * ch.h2() / sc.noise_variance);
}

/// Rates achieved by one design together with how much slack the PU
/// constraint has under it.
struct RateReport {
    double r_pu;              ///< primary rate under this design, bits/channel use
    double r_su;              ///< secondary rate, bits/channel use
    SignalingDesign design;
    double constraint_slack;  ///< r_pu - alpha * r_pu_max
};

}  // namespace igs
