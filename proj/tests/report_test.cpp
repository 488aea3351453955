#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "igs/report.hpp"
#include "support.hpp"

using namespace igs;

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.8, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0, 54.123456789012345}) {
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv round-trip reproduces the records exactly") {
    ExperimentConfig cfg;
    cfg.alpha = 0.8;
    cfg.snr_pu_db = {10.0, 30.0};
    cfg.snr_su_db = {0.0, 12.5, 30.0};
    cfg.trials = 500;
    cfg.seed = 11;
    const SweepResult res = run_sweep(cfg);

    std::stringstream buf;
    write_csv(buf, res.points);
    const std::vector<SweepPoint> parsed = parse_csv(buf);
    REQUIRE(parsed.size() == res.points.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) REQUIRE(parsed[i] == res.points[i]);
}

TEST_CASE("csv layout") {
    SweepPoint p{0.5, 10.0, 20.0, 1.25, 2.5, 100.0, 1.0, 0.01, 0.02, 42, 7};
    std::stringstream buf;
    write_csv(buf, std::span<const SweepPoint>(&p, 1));
    std::string line;
    std::getline(buf, line);
    CHECK(line ==
          "alpha,snr_pu_db,snr_su_db,mean_r_su_proper,mean_r_su_improper,relative_gain_pct,"
          "fraction_improper_beneficial,se_proper,se_improper,trials,seed");
    std::getline(buf, line);
    CHECK(line == "0.5,10,20,1.25,2.5,100,1,0.01,0.02,42,7");
}

TEST_CASE("csv parsing rejects malformed input") {
    std::stringstream empty;
    CHECK_THROWS_AS(parse_csv(empty), std::runtime_error);

    std::stringstream bad_header("a,b\n");
    CHECK_THROWS_AS(parse_csv(bad_header), std::runtime_error);

    std::stringstream short_row(std::string(csv_header) + "\n1,2,3\n");
    CHECK_THROWS_AS(parse_csv(short_row), std::runtime_error);

    std::stringstream bad_number(std::string(csv_header) + "\nx,0,0,0,0,0,0,0,0,1,1\n");
    CHECK_THROWS_AS(parse_csv(bad_number), std::runtime_error);
}

TEST_CASE("json serialization") {
    SweepPoint p{0.5, 10.0, 20.0, 1.25, 2.5, 100.0, 1.0, 0.01, 0.02, 42, 7};
    const nlohmann::json doc = to_json(std::span<const SweepPoint>(&p, 1));
    CHECK(doc.at("schema_version") == 1);
    REQUIRE(doc.at("records").size() == 1);
    CHECK(doc.at("records")[0].at("relative_gain_pct") == 100.0);
    CHECK(doc.at("records")[0].at("trials") == 42);

    auto [sc, ch] = igs::test::fixed_scenario(15.0, 0.5, 8.0);
    const nlohmann::json dec = to_json(select_strategy(sc, ch));
    CHECK(dec.at("schema_version") == 1);
    CHECK(dec.at("regime") == "POWER_LIMITED_IMPROPER");
    CHECK(dec.at("improper_beneficial") == true);
    CHECK(dec.at("circularity_opt").get<double>() == Catch::Approx(0.8660254037844386));
    CHECK(dec.at("power_opt").get<double>() == Catch::Approx(8.0));
}
