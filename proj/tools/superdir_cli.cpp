// Command-line front end for the superdirective URA toolkit.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "superdir/cli_io.hpp"

using superdir::Command;
using superdir::OutputFormat;
using superdir::RunConfig;

namespace {

void add_geometry(CLI::App* app, RunConfig& cfg) {
    app->add_option("--m", cfg.rows, "Element rows along z")->capture_default_str();
    app->add_option("--n", cfg.cols, "Element columns along x")->capture_default_str();
    app->add_option("--dx", cfg.dx, "x spacing in wavelengths")->capture_default_str();
    app->add_option("--dz", cfg.dz, "z spacing in wavelengths")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum-directivity weights and patterns for uniform rectangular arrays"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format;
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                      {"json", OutputFormat::json}};
    bool no_banner = false;

    app.add_option("--out", cfg.out_path, "Output file (default: standard output)");
    app.add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--quad-order", cfg.quad_order, "Gauss-Legendre order for oracle checks")
        ->capture_default_str();
    app.add_flag("--no-banner", no_banner, "Omit the provenance comment line");

    auto* pattern = app.add_subcommand("pattern", "Sample G* over a phi x theta grid");
    add_geometry(pattern, cfg);
    pattern->add_option("--phi-count", cfg.phi_count)->capture_default_str();
    pattern->add_option("--theta-count", cfg.theta_count)->capture_default_str();

    auto* cut = app.add_subcommand("cut", "G* along theta on a fixed-phi plane");
    add_geometry(cut, cfg);
    double cut_phi = 0.0;
    cut->add_option("--phi", cut_phi, "Plane azimuth in degrees (0 = endfire plane)")
        ->capture_default_str();
    cut->add_option("--theta-count", cfg.theta_count)->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Endfire-plane cuts for a list of spacings");
    sweep->add_option("--m", cfg.rows)->capture_default_str();
    sweep->add_option("--n", cfg.cols)->capture_default_str();
    sweep->add_option("--spacings", cfg.spacings, "Comma-separated spacings in wavelengths")
        ->delimiter(',');
    sweep->add_option("--theta-count", cfg.theta_count)->capture_default_str();

    auto* weights = app.add_subcommand("weights", "Optimal excitation towards one direction");
    add_geometry(weights, cfg);
    weights->add_option("--phi", cfg.phi_deg, "Azimuth in degrees")->capture_default_str();
    weights->add_option("--theta", cfg.theta_deg, "Zenith in degrees")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the oracle cross-checks for one geometry");
    add_geometry(verify, cfg);
    verify->add_option("--seed", cfg.seed, "Seed for random excitations and directions")
        ->capture_default_str();
    verify->add_option("--samples", cfg.samples, "Random cases per check")->capture_default_str();

    // Global options are accepted after the subcommand as well.
    for (auto* sub : {pattern, cut, sweep, weights, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : superdir::kExitConfig;
    }

    if (*pattern) cfg.command = Command::pattern;
    if (*cut) {
        cfg.command = Command::cut;
        cfg.phi_deg = cut_phi;
    }
    if (*sweep) cfg.command = Command::sweep;
    if (*weights) cfg.command = Command::weights;
    if (*verify) cfg.command = Command::verify;

    if (!format.empty()) {
        cfg.format = formats.at(format);
    } else if (cfg.command == Command::weights) {
        cfg.format = OutputFormat::json;
    }
    cfg.banner = !no_banner;

    return superdir::run(cfg, std::cout, std::cerr);
}
