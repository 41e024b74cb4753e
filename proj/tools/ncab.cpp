#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ncab/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative Aharonov-Bohm type phases: open-path phase, theta limit, dipole nullity checks"};
    app.require_subcommand(1, 1);

    std::string scenario_path;
    std::string format;
    bool no_timestamp = false;
    double tol = 0.0;
    std::string out_dir;

    const std::map<std::string, std::string> help = {
        {"repro", "phases, bracket terms, bound, verification and nullity; writes repro.csv and repro.json"},
        {"phase", "commutative and noncommutative open-path phases"},
        {"bound", "limit on sqrt(theta) and the comparison table"},
        {"nullity", "dipole configurations: divergence samples and NC terms"},
        {"star-check", "star-product and Bopp-shift identities"},
        {"verify", "closed form against quadrature, term by term"},
    };
    for (const auto& name : ncab::command_names()) {
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--scenario", scenario_path, "scenario file")->check(CLI::ExistingFile);
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json", "table"}));
        sub->add_flag("--no-timestamp", no_timestamp, "omit the generation timestamp");
        sub->add_option("--tol", tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "directory for repro.csv / repro.json");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ncab::exit_invalid;
    }

    ncab::Scenario scenario;
    try {
        if (!scenario_path.empty()) {
            std::ifstream in(scenario_path, std::ios::binary);
            std::ostringstream text;
            text << in.rdbuf();
            scenario = ncab::parse_scenario(text.str());
        }
        if (!format.empty()) {
            scenario.format = ncab::parse_format(format);
        }
        if (no_timestamp) {
            scenario.timestamp = false;
        }
        if (tol > 0.0) {
            scenario.rel_tol = tol;
        }
        if (!out_dir.empty()) {
            scenario.directory = out_dir;
        }
    } catch (const ncab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ncab::exit_invalid;
    }

    return ncab::run_command(app.get_subcommands().front()->get_name(), scenario, std::cout, std::cerr);
}
