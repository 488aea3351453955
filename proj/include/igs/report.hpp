#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "igs/montecarlo.hpp"
#include "igs/solver.hpp"

namespace igs {

inline constexpr int report_schema_version = 1;

/// Formats a double with 17 significant digits via to_chars: locale-free,
/// '.' decimal separator, and exact value round-trip through from_chars.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
    double value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("parse_double: malformed number '" + std::string(text) + "'");
    return value;
}

inline constexpr std::string_view csv_header =
    "alpha,snr_pu_db,snr_su_db,mean_r_su_proper,mean_r_su_improper,relative_gain_pct,"
    "fraction_improper_beneficial,se_proper,se_improper,trials,seed";

inline void write_csv(std::ostream& out, std::span<const SweepPoint> points) {
    out << csv_header << '\n';
    for (const SweepPoint& p : points) {
        out << format_double(p.alpha) << ',' << format_double(p.snr_pu_db) << ',' << format_double(p.snr_su_db)
            << ',' << format_double(p.mean_r_su_proper) << ',' << format_double(p.mean_r_su_improper) << ','
            << format_double(p.relative_gain_pct) << ',' << format_double(p.fraction_improper_beneficial) << ','
            << format_double(p.se_proper) << ',' << format_double(p.se_improper) << ',' << p.trials << ','
            << p.seed << '\n';
    }
}

/// Parses a file produced by write_csv back into rows; numbers reproduce the
/// written values exactly. Rejects unknown headers and short rows.
inline std::vector<SweepPoint> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header) throw std::runtime_error("parse_csv: unexpected header '" + line + "'");

    std::vector<SweepPoint> points;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string_view> cells;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            cells.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (cells.size() != 11) throw std::runtime_error("parse_csv: expected 11 columns, got line '" + line + "'");
        SweepPoint p;
        p.alpha = parse_double(cells[0]);
        p.snr_pu_db = parse_double(cells[1]);
        p.snr_su_db = parse_double(cells[2]);
        p.mean_r_su_proper = parse_double(cells[3]);
        p.mean_r_su_improper = parse_double(cells[4]);
        p.relative_gain_pct = parse_double(cells[5]);
        p.fraction_improper_beneficial = parse_double(cells[6]);
        p.se_proper = parse_double(cells[7]);
        p.se_improper = parse_double(cells[8]);
        p.trials = std::stoll(std::string(cells[9]));
        p.seed = std::stoull(std::string(cells[10]));
        points.push_back(p);
    }
    return points;
}

inline nlohmann::json to_json(const SweepPoint& p) {
    return {{"alpha", p.alpha},
            {"snr_pu_db", p.snr_pu_db},
            {"snr_su_db", p.snr_su_db},
            {"mean_r_su_proper", p.mean_r_su_proper},
            {"mean_r_su_improper", p.mean_r_su_improper},
            {"relative_gain_pct", p.relative_gain_pct},
            {"fraction_improper_beneficial", p.fraction_improper_beneficial},
            {"se_proper", p.se_proper},
            {"se_improper", p.se_improper},
            {"trials", p.trials},
            {"seed", p.seed}};
}

inline nlohmann::json to_json(std::span<const SweepPoint> points) {
    nlohmann::json records = nlohmann::json::array();
    for (const SweepPoint& p : points) records.push_back(to_json(p));
    return {{"schema_version", report_schema_version}, {"records", std::move(records)}};
}

inline nlohmann::json to_json(const StrategyDecision& dec) {
    return {{"schema_version", report_schema_version},
            {"regime", to_string(dec.regime)},
            {"improper_beneficial", dec.improper_beneficial},
            {"circularity_opt", dec.circularity_opt},
            {"power_opt", dec.power_opt},
            {"r_su_proper", dec.r_su_proper},
            {"r_su_improper", dec.r_su_improper},
            {"benefit_ratio", dec.benefit_ratio},
            {"benefit_threshold", dec.benefit_threshold}};
}

}  // namespace igs
