#pragma once

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lwhittle/montecarlo.hpp"
#include "lwhittle/spectral.hpp"
#include "lwhittle/whittle.hpp"

namespace lwhittle::io {

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double parse_double(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw std::invalid_argument("csv line " + std::to_string(line_no) + ": cannot parse number '" +
                                    std::string(field) + "'");
    }
    return v;
}

}  // namespace detail

/// One named column of observations read from a CSV file.
struct NamedSeries {
    std::string name;
    std::vector<double> values;
};

/**
 * @brief Reads series from CSV with a header row.
 *
 * A column named `x` is required. If a `series` column is present the file is in
 * long format and rows are grouped by series name in order of first appearance;
 * otherwise one series named "x" is returned.
 *
 * @throws std::invalid_argument on malformed content
 */
[[nodiscard]] inline std::vector<NamedSeries> read_series_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> x_col;
    std::optional<std::size_t> series_col;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::trim(line).empty()) break;
    }
    if (line_no == 0 || detail::trim(line).empty()) throw std::invalid_argument("csv: missing header row");
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto header = detail::split(line);
    columns = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "x") x_col = i;
        if (header[i] == "series") series_col = i;
    }
    if (!x_col) throw std::invalid_argument("csv: header has no column named 'x'");

    std::vector<NamedSeries> out;
    if (!series_col) out.push_back({"x", {}});
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line);
        if (fields.size() != columns) {
            throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(columns) + " fields");
        }
        const double v = detail::parse_double(fields[*x_col], line_no);
        if (!series_col) {
            out.front().values.push_back(v);
            continue;
        }
        const std::string name(fields[*series_col]);
        auto it = std::find_if(out.begin(), out.end(), [&](const NamedSeries& s) { return s.name == name; });
        if (it == out.end()) {
            out.push_back({name, {}});
            it = std::prev(out.end());
        }
        it->values.push_back(v);
    }
    return out;
}

inline void write_series_csv(std::ostream& out, std::span<const double> x) {
    out << "x\n";
    for (double v : x) out << format_double(v) << '\n';
}

inline void write_periodogram_csv(std::ostream& out, const Periodogram& p) {
    out << "s,lambda,I\n";
    for (std::size_t s = 1; s <= p.size(); ++s) {
        out << s << ',' << format_double(p.frequency(s)) << ',' << format_double(p.at(s)) << '\n';
    }
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const WhittleFit& fit) {
    nlohmann::ordered_json j;
    j["d_hat"] = fit.d_hat;
    j["g_hat"] = fit.g_hat;
    j["m"] = fit.m;
    j["n"] = fit.n;
    j["r_min"] = fit.r_min;
    j["regime"] = std::string(to_string(fit.regime));
    j["se"] = fit.se ? nlohmann::ordered_json(*fit.se) : nlohmann::ordered_json(nullptr);
    j["method"] = std::string(to_string(fit.method));
    j["bounds"] = {fit.bounds.lower, fit.bounds.upper};
    j["boundary_flag"] = fit.boundary_flag;
    return j;
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const LimitLaw& law, std::size_t m) {
    nlohmann::ordered_json j;
    j["d0"] = law.d0;
    j["m"] = m;
    j["regime"] = std::string(to_string(law.regime));
    j["rate"] = law.rate_description();
    j["rate_exponent"] = law.rate_exponent;
    j["j_const"] = law.j ? nlohmann::ordered_json(*law.j) : nlohmann::ordered_json(nullptr);
    j["sigma_d2"] = law.sigma2 ? nlohmann::ordered_json(*law.sigma2) : nlohmann::ordered_json(nullptr);
    const auto tsd = theoretical_sd(law.d0, m);
    j["tsd"] = tsd ? nlohmann::ordered_json(*tsd) : nlohmann::ordered_json(nullptr);
    return j;
}

/// Columns d, n, m, reps, bias, sd, tsd; tsd is empty where no normal limit applies.
inline void write_mc_csv(std::ostream& out, const MCResult& result) {
    out << "d,n,m,reps,bias,sd,tsd\n";
    for (const auto& c : result.cells) {
        out << format_double(c.d) << ',' << c.n << ',' << c.m << ',' << c.reps << ',' << format_double(c.bias) << ','
            << format_double(c.sd) << ',' << (c.tsd ? format_double(*c.tsd) : std::string{}) << '\n';
    }
}

struct DensityCurve {
    double d = 0.0;
    std::vector<double> grid;
    std::vector<double> density;
};

inline void write_density_csv(std::ostream& out, std::span<const DensityCurve> curves) {
    out << "d,grid,density\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.grid.size(); ++i) {
            out << format_double(c.d) << ',' << format_double(c.grid[i]) << ',' << format_double(c.density[i])
                << '\n';
        }
    }
}

}  // namespace lwhittle::io
