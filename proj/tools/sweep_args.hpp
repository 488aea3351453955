#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace igs::cli {

/// Parses a dB-sweep flag value: either a comma list ("10,20,30") or an
/// inclusive start:step:stop range ("0:2.5:30").
inline std::vector<double> parse_db_list(const std::string& text) {
    const auto to_double = [](const std::string& s) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + s + "'");
        }
        if (used != s.size()) throw std::invalid_argument("trailing junk in number: '" + s + "'");
        if (!std::isfinite(v)) throw std::invalid_argument("values must be finite: '" + s + "'");
        return v;
    };

    std::vector<double> values;
    if (text.find(':') != std::string::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
            throw std::invalid_argument("range must be start:step:stop: '" + text + "'");
        const double start = to_double(text.substr(0, c1));
        const double step = to_double(text.substr(c1 + 1, c2 - c1 - 1));
        const double stop = to_double(text.substr(c2 + 1));
        if (!(step > 0)) throw std::invalid_argument("range step must be positive");
        if (stop < start) throw std::invalid_argument("range stop must not precede start");
        const long long count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long long i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
        return values;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw std::invalid_argument("empty entry in list: '" + text + "'");
        values.push_back(to_double(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) throw std::invalid_argument("empty sweep list");
    return values;
}

}  // namespace igs::cli
