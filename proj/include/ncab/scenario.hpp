#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "ncab/bounds.hpp"
#include "ncab/errors.hpp"
#include "ncab/phase.hpp"

namespace ncab {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "table") {
        return OutputFormat::table;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "json") {
        return OutputFormat::json;
    }
    throw ValidationError("unknown output format '" + s + "' (expected table, csv or json)");
}

inline const char* to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::table:
        return "table";
    case OutputFormat::csv:
        return "csv";
    case OutputFormat::json:
        return "json";
    }
    return "?";
}

/// Everything a CLI run needs. Physical defaults are the reference open-path
/// experiment; theta defaults to the square of the limit for these inputs.
struct Scenario {
    ExperimentParams params{};
    std::optional<double> theta_m2;
    OutputFormat format = OutputFormat::table;
    bool timestamp = true;
    std::string directory = ".";
    double rel_tol = 1e-10;

    /// params with theta resolved.
    ExperimentParams resolved() const {
        ExperimentParams p = params;
        if (theta_m2) {
            p.theta = *theta_m2;
        } else {
            const double s = theta_limit(p).sqrt_theta_m;
            p.theta = s * s;
        }
        p.validate();
        return p;
    }

    QuadratureOptions quadrature() const {
        QuadratureOptions q;
        q.rel_tol = rel_tol;
        return q;
    }

    void validate() const {
        params.validate();
        if (theta_m2 && (!(*theta_m2 >= 0.0) || !std::isfinite(*theta_m2))) {
            throw ValidationError("theta must be finite and non-negative");
        }
        if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) {
            throw ValidationError("relative tolerance must lie in (0, 1)");
        }
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Drop a trailing '#' comment that is not inside a quoted string.
inline std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') {
            quoted = !quoted;
        } else if (s[i] == '#' && !quoted) {
            return s.substr(0, i);
        }
    }
    return s;
}

struct RawValue {
    std::string text;
    bool quoted = false;
    std::size_t line = 0;
};

inline double as_number(const RawValue& v, const std::string& field) {
    if (v.quoted) {
        throw ParseError(v.line, field, "expected a number, got a string");
    }
    double out = 0.0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    if (!v.text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
        throw ParseError(v.line, field, "invalid number '" + v.text + "'");
    }
    return out;
}

inline bool as_bool(const RawValue& v, const std::string& field) {
    if (!v.quoted && v.text == "true") {
        return true;
    }
    if (!v.quoted && v.text == "false") {
        return false;
    }
    throw ParseError(v.line, field, "expected true or false, got '" + v.text + "'");
}

inline const std::map<std::string, std::set<std::string>>& scenario_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"field", {"kind", "radius_m", "B0_tesla"}},
        {"path", {"kind", "x0_m", "y0_m"}},
        {"particle", {"species", "v_m_per_s"}},
        {"nc", {"theta_m2", "epsilon_rad"}},
        {"output", {"format", "timestamp", "directory", "rel_tol"}},
    };
    return schema;
}

} // namespace detail

/// Parses a scenario document:
///
///   [field]     kind = "solenoid", radius_m, B0_tesla
///   [path]      kind = "segment", x0_m, y0_m
///   [particle]  species = "electron", v_m_per_s
///   [nc]        theta_m2, epsilon_rad
///   [output]    format = "table" | "csv" | "json", timestamp, directory, rel_tol
///
/// One `key = value` per line, `#` starts a comment, strings may be quoted.
/// Unknown sections or keys and repeated keys are errors. Missing entries keep
/// their defaults.
inline Scenario parse_scenario(std::string_view text) {
    using detail::RawValue;
    std::map<std::string, RawValue> values;  // "section.key"
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    const auto& schema = detail::scenario_schema();

    while (std::getline(in, raw)) {
        ++line_no;
        if (line_no == 1 && raw.rfind("\xEF\xBB\xBF", 0) == 0) {
            raw.erase(0, 3);
        }
        const auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(line_no, "", "unterminated section header");
            }
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (!schema.count(section)) {
                throw ParseError(line_no, section, "unknown section");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "", "expected 'key = value'");
        }
        const std::string key(detail::trim(line.substr(0, eq)));
        auto value = detail::trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ParseError(line_no, key, "key outside of any section");
        }
        const std::string field = section + "." + key;
        if (key.empty() || !schema.at(section).count(key)) {
            throw ParseError(line_no, field, "unknown key");
        }
        if (value.empty()) {
            throw ParseError(line_no, field, "missing value");
        }
        RawValue v{"", false, line_no};
        if (value.front() == '"') {
            if (value.size() < 2 || value.back() != '"') {
                throw ParseError(line_no, field, "unterminated string");
            }
            v.text = std::string(value.substr(1, value.size() - 2));
            v.quoted = true;
        } else {
            v.text = std::string(value);
        }
        if (!values.emplace(field, v).second) {
            throw ParseError(line_no, field, "duplicate key");
        }
    }

    Scenario s;
    auto number = [&](const char* field, double& target) {
        if (auto it = values.find(field); it != values.end()) {
            target = detail::as_number(it->second, field);
        }
    };
    auto fixed = [&](const char* field, const char* only) {
        if (auto it = values.find(field); it != values.end() && it->second.text != only) {
            throw ParseError(it->second.line, field, std::string("only '") + only + "' is supported");
        }
    };
    fixed("field.kind", "solenoid");
    fixed("path.kind", "segment");
    fixed("particle.species", "electron");
    number("field.radius_m", s.params.a);
    number("field.B0_tesla", s.params.B0);
    number("path.x0_m", s.params.x0);
    number("path.y0_m", s.params.y0);
    number("particle.v_m_per_s", s.params.v);
    number("nc.epsilon_rad", s.params.epsilon);
    if (auto it = values.find("nc.theta_m2"); it != values.end()) {
        s.theta_m2 = detail::as_number(it->second, "nc.theta_m2");
    }
    if (auto it = values.find("output.format"); it != values.end()) {
        try {
            s.format = parse_format(it->second.text);
        } catch (const ValidationError& e) {
            throw ParseError(it->second.line, "output.format", e.what());
        }
    }
    if (auto it = values.find("output.timestamp"); it != values.end()) {
        s.timestamp = detail::as_bool(it->second, "output.timestamp");
    }
    if (auto it = values.find("output.directory"); it != values.end()) {
        s.directory = it->second.text;
    }
    number("output.rel_tol", s.rel_tol);
    s.validate();
    return s;
}

} // namespace ncab
