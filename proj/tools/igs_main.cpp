// igs: secondary-user signaling design in an underlay cognitive-radio
// interference channel.
//
//   igs sweep   Rayleigh-fading Monte Carlo rate sweep, CSV/JSON out
//   igs policy  optimal (power, circularity) for one explicit scenario
//   igs verify  closed forms cross-checked against brute-force search

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igs/igs.hpp"
#include "sweep_args.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_io_error = 1;
constexpr int exit_invalid_config = 2;
constexpr int exit_verify_failed = 3;

/// Writes to --out when given, standard output otherwise.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (path.empty()) return;
        file_.emplace(path);
        if (!*file_) throw std::ios_base::failure("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void finish() {
        stream().flush();
        if (file_ && !*file_) throw std::ios_base::failure("write failed");
    }

  private:
    std::optional<std::ofstream> file_;
};

struct SweepArgs {
    double alpha = 0.5;
    std::string snr_pu_db = "10,20,30";
    std::string snr_su_db = "0:2.5:30";
    long long trials = 100000;
    std::uint64_t seed = 1;
    double sigma2 = 1.0;
    bool independent_sampling = false;
    std::string out;
    std::string format = "csv";
};

int run_sweep_cmd(const SweepArgs& args) {
    igs::ExperimentConfig cfg;
    cfg.alpha = args.alpha;
    cfg.snr_pu_db = igs::cli::parse_db_list(args.snr_pu_db);
    cfg.snr_su_db = igs::cli::parse_db_list(args.snr_su_db);
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.sigma2 = args.sigma2;
    cfg.independent_sampling = args.independent_sampling;
    cfg.validate();

    const igs::SweepResult result = igs::run_sweep(cfg);

    OutputTarget target(args.out);
    if (args.format == "csv")
        igs::write_csv(target.stream(), result.points);
    else
        target.stream() << igs::to_json(std::span<const igs::SweepPoint>(result.points)).dump(2) << '\n';
    target.finish();
    return exit_ok;
}

struct PolicyArgs {
    double h2 = 0, d2 = 0, g2 = 0, f2 = 0;
    double pu_power = 0, su_power = 0, sigma2 = 1.0, alpha = 0.5;
    std::optional<double> pu_tx_power;
    std::string out;
};

int run_policy_cmd(const PolicyArgs& args) {
    const igs::ChannelRealization ch =
        igs::ChannelRealization::from_squared_moduli(args.h2, args.d2, args.g2, args.f2);
    const igs::ScenarioParams sc(args.pu_power, args.su_power, args.sigma2, args.alpha,
                                 args.pu_tx_power.value_or(args.pu_power));
    const igs::StrategyDecision dec = igs::select_strategy(sc, ch);

    OutputTarget target(args.out);
    target.stream() << igs::to_json(dec).dump(2) << '\n';
    target.finish();
    return exit_ok;
}

struct VerifyArgs {
    long long scenarios = 1000;
    int kappa_grid = 1001;
    std::uint64_t seed = 1;
    std::string out;
    std::string replay;
};

nlohmann::json serialize_case(const igs::ScenarioParams& sc, const igs::ChannelRealization& ch,
                              double circularity, double claimed_allowed_power) {
    return {{"schema_version", igs::report_schema_version},
            {"scenario",
             {{"pu_power_budget", sc.pu_power_budget},
              {"su_power_budget", sc.su_power_budget},
              {"noise_variance", sc.noise_variance},
              {"loading_factor", sc.loading_factor},
              {"pu_tx_power", sc.pu_tx_power}}},
            {"channel", {{"h2", ch.h2()}, {"d2", ch.d2()}, {"g2", ch.g2()}, {"f2", ch.f2()}}},
            {"circularity", circularity},
            {"claimed_allowed_power", claimed_allowed_power}};
}

double rel_dev(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0 ? std::abs(a - b) / scale : 0.0;
}

/// Re-checks one serialized case: the closed form and any stored claim must
/// both agree with the bisection search.
int run_replay(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open replay file '" + path + "'");
    nlohmann::json doc;
    in >> doc;
    const auto& s = doc.at("scenario");
    const igs::ScenarioParams sc(s.at("pu_power_budget").get<double>(), s.at("su_power_budget").get<double>(),
                                 s.at("noise_variance").get<double>(), s.at("loading_factor").get<double>(),
                                 s.at("pu_tx_power").get<double>());
    const auto& c = doc.at("channel");
    const igs::ChannelRealization ch = igs::ChannelRealization::from_squared_moduli(
        c.at("h2").get<double>(), c.at("d2").get<double>(), c.at("g2").get<double>(), c.at("f2").get<double>());
    const double kappa = doc.at("circularity").get<double>();

    const double closed = igs::allowed_power(sc, ch, kappa);
    const double oracle = igs::oracle::max_feasible_power(sc, ch, kappa);
    double dev = igs::is_unbounded(closed) != igs::is_unbounded(oracle) ? igs::unbounded : 0.0;
    if (std::isfinite(closed) && std::isfinite(oracle)) dev = rel_dev(closed, oracle);
    if (doc.contains("claimed_allowed_power")) {
        const double claimed = doc.at("claimed_allowed_power").get<double>();
        if (std::isfinite(oracle)) dev = std::max(dev, rel_dev(claimed, oracle));
    }
    out << "replay rel deviation: " << igs::format_double(dev) << '\n';
    if (!(dev < 1e-9)) {
        std::cerr << "replay case failed verification\n";
        return exit_verify_failed;
    }
    return exit_ok;
}

int run_verify_cmd(const VerifyArgs& args) {
    OutputTarget target(args.out);
    if (!args.replay.empty()) {
        const int code = run_replay(args.replay, target.stream());
        target.finish();
        return code;
    }
    if (args.scenarios < 1) throw std::invalid_argument("verify: --scenarios must be at least 1");
    igs::oracle::OracleConfig grid_cfg;
    grid_cfg.kappa_grid_steps = args.kappa_grid;
    grid_cfg.validate();

    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto draw_case = [&] {
        std::mt19937_64 ch_rng(igs::detail::trial_seed(args.seed, 17, rng()));
        const igs::ChannelRealization ch = igs::sample_channel(ch_rng);
        const double alpha = unif(rng);
        const double pu = std::pow(10.0, 3.0 * unif(rng));
        const double su = std::pow(10.0, 3.0 * unif(rng));
        return std::pair(igs::ScenarioParams(pu, su, 1.0, alpha), ch);
    };

    double max_power_dev = 0.0, max_tightness_dev = 0.0, max_identity_dev = 0.0;
    bool failed = false;
    const auto report_failure = [&](const igs::ScenarioParams& sc, const igs::ChannelRealization& ch,
                                    double kappa, double closed) {
        if (!failed) std::cerr << serialize_case(sc, ch, kappa, closed).dump(2) << '\n';
        failed = true;
    };

    for (long long i = 0; i < args.scenarios; ++i) {
        const auto [sc, ch] = draw_case();
        const double target_rate = sc.loading_factor * igs::derive(sc, ch).r_pu_max;
        for (double kappa : {0.0, 0.25, 0.5, 0.75, 0.99}) {
            const double closed = igs::allowed_power(sc, ch, kappa);
            const double found = igs::oracle::max_feasible_power(sc, ch, kappa);
            if (std::isfinite(closed) && std::isfinite(found)) {
                const double dev = rel_dev(closed, found);
                max_power_dev = std::max(max_power_dev, dev);
                if (!(dev < 1e-9)) report_failure(sc, ch, kappa, closed);
                if (closed <= sc.su_power_budget) {
                    const double tight = std::abs(igs::pu_rate(sc, ch, {closed, kappa}) - target_rate);
                    max_tightness_dev = std::max(max_tightness_dev, tight);
                    if (!(tight < 1e-9)) report_failure(sc, ch, kappa, closed);
                }
            }
        }
        const double q0 = igs::allowed_power_proper(sc, ch);
        const double qk0 = igs::allowed_power(sc, ch, 0.0);
        if (std::isfinite(q0) && std::isfinite(qk0)) {
            const double dev = rel_dev(q0, qk0);
            max_identity_dev = std::max(max_identity_dev, dev);
            if (!(dev < 1e-10)) report_failure(sc, ch, 0.0, qk0);
        }
    }

    // decision agreement on a grid oracle for a bounded subset (the grid is
    // the expensive part)
    const long long decision_cases = std::min<long long>(args.scenarios, 100);
    long long decision_mismatches = 0;
    for (long long i = 0; i < decision_cases; ++i) {
        const auto [sc, ch] = draw_case();
        const igs::StrategyDecision dec = igs::select_strategy(sc, ch);
        const auto best = igs::oracle::grid_search_optimum(sc, ch, grid_cfg);
        const double step = 1.0 / (grid_cfg.kappa_grid_steps - 1);
        const bool improper_regime =
            dec.regime == igs::Regime::max_improper || dec.regime == igs::Regime::power_limited_improper;
        const bool kappa_ok = improper_regime ? std::abs(best.circularity - dec.circularity_opt) <= step + 1e-12
                                              : best.circularity <= step + 1e-12;
        if (!kappa_ok || best.r_su > dec.r_su_improper + 1e-6) {
            ++decision_mismatches;
            report_failure(sc, ch, dec.circularity_opt, dec.power_opt);
        }
    }

    auto& out = target.stream();
    out << "scenarios: " << args.scenarios << '\n';
    out << "max rel power deviation (closed form vs bisection): " << igs::format_double(max_power_dev) << '\n';
    out << "max constraint tightness deviation [bits]: " << igs::format_double(max_tightness_dev) << '\n';
    out << "max rel proper-power identity deviation: " << igs::format_double(max_identity_dev) << '\n';
    out << "decision mismatches vs grid search (" << decision_cases
        << " cases): " << decision_mismatches << '\n';
    target.finish();
    return failed ? exit_verify_failed : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secondary-user power and circularity design for underlay cognitive radio"};
    app.require_subcommand(1);

    SweepArgs sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo rate sweep over Rayleigh channels");
    sweep_cmd->add_option("--alpha", sweep.alpha, "PU loading factor in [0,1]")->required();
    sweep_cmd->add_option("--snr-pu-db", sweep.snr_pu_db, "PU SNR points, comma list (default 10,20,30)");
    sweep_cmd->add_option("--snr-su-db", sweep.snr_su_db,
                          "SU SNR sweep, comma list or start:step:stop (default 0:2.5:30)");
    sweep_cmd->add_option("--trials", sweep.trials, "channel realizations per point (default 100000)");
    sweep_cmd->add_option("--seed", sweep.seed, "RNG seed");
    sweep_cmd->add_option("--sigma2", sweep.sigma2, "noise variance (default 1)");
    sweep_cmd->add_flag("--independent-sampling", sweep.independent_sampling,
                        "fresh channel draws per sweep point (default: common random numbers)");
    sweep_cmd->add_option("--out", sweep.out, "output path (default: stdout)");
    sweep_cmd->add_option("--format", sweep.format, "csv|json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    PolicyArgs policy;
    CLI::App* policy_cmd = app.add_subcommand("policy", "optimal strategy for one explicit scenario (JSON)");
    policy_cmd->add_option("--h2", policy.h2, "|h|^2, PU direct link squared gain")->required();
    policy_cmd->add_option("--d2", policy.d2, "|d|^2, PU-to-SU cross link squared gain")->required();
    policy_cmd->add_option("--g2", policy.g2, "|g|^2, SU-to-PU cross link squared gain")->required();
    policy_cmd->add_option("--f2", policy.f2, "|f|^2, SU direct link squared gain")->required();
    policy_cmd->add_option("--pu-power", policy.pu_power, "PU power budget P")->required();
    policy_cmd->add_option("--su-power", policy.su_power, "SU power budget Q")->required();
    policy_cmd->add_option("--sigma2", policy.sigma2, "noise variance (default 1)");
    policy_cmd->add_option("--alpha", policy.alpha, "PU loading factor in [0,1]")->required();
    double pu_tx_power = 0;
    CLI::Option* tx_opt = policy_cmd->add_option("--pu-tx-power", pu_tx_power, "PU transmit power p (default P)");
    policy_cmd->add_option("--out", policy.out, "output path (default: stdout)");

    VerifyArgs verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "cross-check closed forms against brute force");
    verify_cmd->add_option("--scenarios", verify.scenarios, "number of random scenarios (default 1000)");
    verify_cmd->add_option("--kappa-grid", verify.kappa_grid, "circularity grid points (default 1001)");
    verify_cmd->add_option("--seed", verify.seed, "RNG seed");
    verify_cmd->add_option("--out", verify.out, "output path (default: stdout)");
    verify_cmd->add_option("--replay", verify.replay, "re-check one serialized failure case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_invalid_config;
    }

    try {
        if (*sweep_cmd) return run_sweep_cmd(sweep);
        if (*policy_cmd) {
            if (tx_opt->count() > 0) policy.pu_tx_power = pu_tx_power;
            return run_policy_cmd(policy);
        }
        return run_verify_cmd(verify);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return exit_invalid_config;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io_error;
    }
}
