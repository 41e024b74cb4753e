#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncab/bounds.hpp"
#include "ncab/dipole.hpp"
#include "ncab/errors.hpp"
#include "ncab/nc_algebra.hpp"
#include "ncab/phase.hpp"
#include "ncab/scenario.hpp"

namespace ncab {

/// One reported quantity. `value` is empty for purely textual results
/// (verdicts, N/A ratios), which then live in `note`.
struct Entry {
    std::string section;
    std::string quantity;
    std::optional<double> value;
    std::string unit;
    std::string note;
};

struct Report {
    std::string command;
    std::vector<Entry> entries;

    void add(std::string section, std::string quantity, std::optional<double> value, std::string unit = "",
             std::string note = "") {
        entries.push_back({std::move(section), std::move(quantity), value, std::move(unit), std::move(note)});
    }

    const Entry* find(const std::string& section, const std::string& quantity) const {
        for (const auto& e : entries) {
            if (e.section == section && e.quantity == quantity) {
                return &e;
            }
        }
        return nullptr;
    }

    void append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"repro", "phase", "bound", "nullity", "star-check", "verify"};
    return names;
}

namespace detail {

inline void add_inputs(Report& r, const ExperimentParams& p) {
    r.add("inputs", "a", p.a, "m");
    r.add("inputs", "x0", p.x0, "m");
    r.add("inputs", "y0", p.y0, "m");
    r.add("inputs", "B0", p.B0, "T");
    r.add("inputs", "v", p.v, "m/s");
    r.add("inputs", "epsilon", p.epsilon, "rad");
    r.add("inputs", "theta", p.theta, "m^2");
}

inline std::string format_number(double v) {
    v += 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string short_number(double v) {
    v += 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

inline Report report_phase(const Scenario& s) {
    const ExperimentParams p = s.resolved();
    Report r{"phase", {}};
    detail::add_inputs(r, p);
    const PhaseBreakdown b = phase_breakdown(p, s.quadrature());
    r.add("phase", "commutative", b.commutative, "rad", "-(2e/hbar) B0 a^2 arctan(x0/y0)");
    r.add("phase", "nc_closed", b.nc_closed, "rad");
    r.add("phase", "nc_closed_geometric", b.nc_closed_geometric, "rad");
    r.add("phase", "nc_closed_kinetic", b.nc_closed_kinetic, "rad");
    r.add("phase", "nc_numeric", b.nc_numeric, "rad", "quadrature");
    r.add("phase", "prefactor", b.prefactor, "m^2", "(theta/8)(Phi/Phi0)^2");
    r.add("bracket", "geom1", b.bracket.geom1, "m^-2", "arctan(x/y)/y^2");
    r.add("bracket", "geom2", b.bracket.geom2, "m^-2", "(x/y)/(x^2+y^2)");
    r.add("bracket", "kinetic", b.bracket.kinetic, "m^-2", "(8 pi/lambda_e)(Phi0/Phi)(v/c) x/(x^2+y^2)");
    r.add("bracket", "kinetic_per_speed", b.bracket.kinetic / (p.v > 0.0 ? p.v : 1.0), "m^-2 s/m");
    return r;
}

inline Report report_bound(const Scenario& s) {
    const ExperimentParams p = s.resolved();
    Report r{"bound", {}};
    detail::add_inputs(r, p);
    const BoundResult b = theta_limit(p);
    r.add("bound", "flux", b.flux, "T m^2", "pi a^2 B0");
    r.add("bound", "flux_ratio", b.flux_ratio, "", "Phi/Phi0");
    r.add("bound", "arctan_x_over_y", b.arctan_xy, "rad");
    r.add("bound", "sqrt_theta", b.sqrt_theta_m, "m");
    r.add("bound", "sqrt_theta_inv_energy", b.sqrt_theta_inv_gev, "GeV^-1");
    r.add("bound", "energy_scale", b.energy_scale_tev, "TeV");
    const BoundResult first = theta_limit_inverted(p, BoundTerms::first_term);
    const BoundResult all = theta_limit_inverted(p, BoundTerms::all_terms);
    r.add("bound_inverted", "first_term_sqrt_theta", first.sqrt_theta_m, "m", "phase = epsilon exactly");
    r.add("bound_inverted", "first_term_energy_scale", first.energy_scale_tev, "TeV");
    r.add("bound_inverted", "all_terms_sqrt_theta", all.sqrt_theta_m, "m", "extension: full bracket");
    r.add("bound_inverted", "all_terms_energy_scale", all.energy_scale_tev, "TeV");
    for (const auto& row : bound_comparison_table(b)) {
        r.add("comparison", row.scenario, row.sqrt_theta_inv_gev, "GeV^-1",
              "ratio to this computation " + detail::short_number(row.ratio_to_this_work));
    }
    return r;
}

inline Report report_nullity(const Scenario& s) {
    const ExperimentParams p = s.resolved();
    Report r{"nullity", {}};
    r.add("inputs", "theta", p.theta, "m^2");
    NullityOptions opt;
    opt.quadrature = s.quadrature();
    for (const auto& cfg : reference_dipole_configs(p.a, p.B0, p.x0, p.y0)) {
        const NullityReport n = nullity_report(cfg, p.theta_matrix(), opt);
        const std::string sec = "nullity:" + cfg.name;
        r.add(sec, "max_scaled_divergence", n.max_scaled_divergence, "");
        r.add(sec, "divergence_velocity_term", n.terms.divergence_reading.velocity, "rad");
        r.add(sec, "divergence_quadratic_term", n.terms.divergence_reading.quadratic, "rad");
        r.add(sec, "scaled_velocity_term", n.scaled_velocity, "");
        r.add(sec, "scaled_quadratic_term", n.scaled_quadratic, "");
        r.add(sec, "gradient_velocity_term", n.terms.gradient_reading.velocity, "rad", "diagnostic");
        r.add(sec, "gradient_quadratic_term", n.terms.gradient_reading.quadratic, "rad", "diagnostic");
        r.add(sec, "verdict", std::nullopt, "", n.verdict());
    }
    return r;
}

inline Report report_star_check(const Scenario& s) {
    const ExperimentParams p = s.resolved();
    Report r{"star-check", {}};
    r.add("inputs", "theta", p.theta, "m^2");
    bool all = true;
    for (const auto& c : nc_identity_checks(p.theta_matrix())) {
        r.add("identities", c.name, c.value, "", c.pass ? "pass" : "FAIL");
        all = all && c.pass;
    }
    if (!all) {
        throw InvariantError("star-product identity suite failed");
    }
    return r;
}

inline Report report_verify(const Scenario& s) {
    const ExperimentParams p = s.resolved();
    Report r{"verify", {}};
    detail::add_inputs(r, p);
    const VerificationReport v = verify_closed_vs_quadrature(p, s.quadrature());
    for (const auto& row : v.rows) {
        const std::string sec = "verify:" + row.name;
        r.add(sec, "numeric", row.numeric, "");
        r.add(sec, "closed", row.closed, "");
        if (row.ratio) {
            r.add(sec, "ratio", *row.ratio, "", row.flagged ? "FLAGGED: ratio differs from 1" : "agrees");
        } else {
            r.add(sec, "ratio", std::nullopt, "", "N/A");
        }
        if (!row.note.empty()) {
            r.add(sec, "description", std::nullopt, "", row.note);
        }
    }
    return r;
}

inline Report report_repro(const Scenario& s) {
    Report r{"repro", {}};
    const Report phase = report_phase(s);
    r.append(phase);
    for (const char* term : {"geom1", "geom2", "kinetic"}) {
        const double v = *phase.find("bracket", term)->value;
        r.add("magnitude", term, std::floor(std::log10(std::abs(v))), "log10 m^-2");
    }
    Report bound = report_bound(s);
    std::erase_if(bound.entries, [](const Entry& e) { return e.section == "inputs"; });
    r.append(bound);
    Report verify = report_verify(s);
    std::erase_if(verify.entries, [](const Entry& e) { return e.section == "inputs"; });
    r.append(verify);
    Report nullity = report_nullity(s);
    std::erase_if(nullity.entries, [](const Entry& e) { return e.section == "inputs"; });
    r.append(nullity);
    return r;
}

inline Report build_report(const std::string& command, const Scenario& s) {
    if (command == "repro") {
        return report_repro(s);
    }
    if (command == "phase") {
        return report_phase(s);
    }
    if (command == "bound") {
        return report_bound(s);
    }
    if (command == "nullity") {
        return report_nullity(s);
    }
    if (command == "star-check") {
        return report_star_check(s);
    }
    if (command == "verify") {
        return report_verify(s);
    }
    throw ValidationError("unknown command '" + command + "'");
}

/// RFC 4180 CSV: header section,quantity,value,unit,note. Optional first line
/// "# generated <UTC time>".
inline void write_csv(std::ostream& os, const Report& r, std::optional<std::string> timestamp) {
    if (timestamp) {
        os << "# generated " << *timestamp << "\r\n";
    }
    os << "section,quantity,value,unit,note\r\n";
    for (const auto& e : r.entries) {
        os << detail::csv_field(e.section) << ',' << detail::csv_field(e.quantity) << ','
           << (e.value ? detail::format_number(*e.value) : std::string{}) << ',' << detail::csv_field(e.unit) << ','
           << detail::csv_field(e.note) << "\r\n";
    }
}

/// {"command": ..., ["generated": ...,] "sections": {section: {quantity:
/// {"value": number|null, "unit": string, "note": string}}}}
inline nlohmann::ordered_json to_json(const Report& r, std::optional<std::string> timestamp) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    if (timestamp) {
        j["generated"] = *timestamp;
    }
    j["sections"] = nlohmann::ordered_json::object();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json item;
        item["value"] = e.value ? nlohmann::ordered_json(*e.value + 0.0) : nlohmann::ordered_json(nullptr);
        item["unit"] = e.unit;
        item["note"] = e.note;
        j["sections"][e.section][e.quantity] = std::move(item);
    }
    return j;
}

inline void write_json(std::ostream& os, const Report& r, std::optional<std::string> timestamp) {
    os << to_json(r, std::move(timestamp)).dump(2) << '\n';
}

inline void write_table(std::ostream& os, const Report& r, std::optional<std::string> timestamp) {
    if (timestamp) {
        os << "# generated " << *timestamp << '\n';
    }
    std::size_t width = 0;
    for (const auto& e : r.entries) {
        width = std::max(width, e.quantity.size());
    }
    width = std::min<std::size_t>(width, 48);
    std::string current;
    for (const auto& e : r.entries) {
        if (e.section != current) {
            current = e.section;
            os << "\n[" << current << "]\n";
        }
        os << "  " << std::left << std::setw(static_cast<int>(width)) << e.quantity << "  " << std::right
           << std::setw(24) << (e.value ? detail::short_number(*e.value) : std::string("-")) << "  " << std::left
           << std::setw(10) << e.unit << ' ' << e.note << '\n';
    }
}

inline void write_report(std::ostream& os, const Report& r, OutputFormat f, std::optional<std::string> timestamp) {
    switch (f) {
    case OutputFormat::csv:
        write_csv(os, r, timestamp);
        break;
    case OutputFormat::json:
        write_json(os, r, timestamp);
        break;
    case OutputFormat::table:
        write_table(os, r, timestamp);
        break;
    }
}

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_convergence = 2, exit_internal = 3 };

/// Runs one command. Output goes to `out` in the scenario's format; `repro`
/// additionally writes repro.csv and repro.json into the scenario directory.
/// Returns 0 on success, 1 for parse/validation errors, 2 for quadrature
/// non-convergence, 3 for internal invariant violations.
inline int run_command(const std::string& command, const Scenario& s, std::ostream& out, std::ostream& err) {
    try {
        s.validate();
        const Report r = build_report(command, s);
        const std::optional<std::string> ts = s.timestamp ? std::optional(detail::utc_timestamp()) : std::nullopt;
        write_report(out, r, s.format, ts);
        if (command == "repro") {
            const std::filesystem::path dir(s.directory);
            std::filesystem::create_directories(dir);
            std::ofstream csv(dir / "repro.csv", std::ios::binary);
            std::ofstream json(dir / "repro.json", std::ios::binary);
            if (!csv || !json) {
                throw ValidationError("cannot write output files in '" + s.directory + "'");
            }
            write_csv(csv, r, ts);
            write_json(json, r, ts);
        }
        return exit_ok;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (estimate " << e.estimate() << ", error bound " << e.error_bound()
            << ")\n";
        return exit_convergence;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}

} // namespace ncab
