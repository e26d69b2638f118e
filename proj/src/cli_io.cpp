#include "superdir/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

#include "superdir/errors.hpp"

namespace superdir {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

/// Degrees for output; values within 1e-9 of an integer are snapped so a
/// 1-degree grid prints as integers.
double to_degrees(double rad) {
    const double deg = rad * 180.0 / kPi;
    const double rounded = std::round(deg);
    return std::abs(deg - rounded) < 1e-9 ? rounded : deg;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::pattern: return "pattern";
        case Command::cut: return "cut";
        case Command::sweep: return "sweep";
        case Command::weights: return "weights";
        case Command::verify: return "verify";
    }
    return "?";
}

Json geometry_json(const ArrayGeometry& geom) {
    return Json{{"m", geom.rows()}, {"n", geom.cols()}, {"dx_wl", geom.dx()}, {"dz_wl", geom.dz()}};
}

std::string geometry_banner(const ArrayGeometry& geom) {
    return "M=" + std::to_string(geom.rows()) + " N=" + std::to_string(geom.cols()) +
           " dx=" + format_number(geom.dx()) + " dz=" + format_number(geom.dz());
}

std::string peak_line(const PatternPeak& peak) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << "# peak " << peak.db << " dB at phi "
      << format_number(to_degrees(peak.phi)) << " deg, theta "
      << format_number(to_degrees(peak.theta)) << " deg";
    return s.str();
}

/// Uniform doubles in [0, 1) from raw 64-bit draws; independent of the
/// standard library's distribution implementations.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

ExcitationVector random_excitation(UniformSource& rng, Eigen::Index size) {
    ExcitationVector j(size);
    for (Eigen::Index k = 0; k < size; ++k) j(k) = Complex(rng.in(-1.0, 1.0), rng.in(-1.0, 1.0));
    return j;
}

Direction random_direction(UniformSource& rng) {
    const double phi = rng.in(0.0, kPi);
    const double theta = rng.in(0.0, kPi);
    return Direction(phi, theta);
}

void write_report(std::ostream& out, const VerifyReport& report, const ArrayGeometry& geom,
                  OutputFormat format, bool banner) {
    const auto& checks = report.checks;
    if (format == OutputFormat::json) {
        Json doc{{"geometry", geometry_json(geom)},
                 {"condition_estimate", report.condition_estimate},
                 {"jitter_applied", report.jitter_applied},
                 {"checks", Json::array()}};
        bool all = true;
        for (const auto& c : checks) {
            doc["checks"].push_back(Json{{"name", c.name},
                                         {"residual", c.residual},
                                         {"threshold", c.threshold},
                                         {"passed", c.passed},
                                         {"note", c.note}});
            all = all && c.passed;
        }
        doc["passed"] = all;
        out << doc.dump(2) << '\n';
        return;
    }
    if (banner) out << "# superdir verify " << geometry_banner(geom) << '\n';
    {
        std::ostringstream info;
        info << std::scientific << std::setprecision(3) << "condition estimate "
             << report.condition_estimate << ", jitter applied " << report.jitter_applied;
        out << info.str() << '\n';
    }
    out << std::left << std::setw(34) << "check" << std::setw(14) << "residual" << std::setw(12)
        << "threshold" << "result\n";
    for (const auto& c : checks) {
        std::ostringstream res;
        res << std::scientific << std::setprecision(3) << c.residual;
        std::ostringstream thr;
        thr << std::scientific << std::setprecision(1) << c.threshold;
        out << std::left << std::setw(34) << c.name << std::setw(14) << res.str() << std::setw(12)
            << thr.str() << (c.passed ? "PASS" : "FAIL");
        if (!c.note.empty()) out << "  (" << c.note << ')';
        out << '\n';
    }
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void validate(const RunConfig& config) {
    // Geometry constructors carry the range checks; rethrow with CLI names.
    try {
        (void)ArrayGeometry(config.rows, config.cols, config.dx, config.dz);
    } catch (const ConfigError& e) {
        static const std::pair<const char*, const char*> names[] = {
            {"rows", "--m"}, {"cols", "--n"}, {"dx", "--dx"}, {"dz", "--dz"}};
        for (const auto& [field, flag] : names) {
            if (e.field() == field) {
                throw ConfigError(flag, std::string(e.what()).substr(e.field().size() + 2));
            }
        }
        throw;
    }
    auto check_angle = [](double deg, const char* flag) {
        if (!std::isfinite(deg) || deg < 0.0 || deg > 180.0) {
            throw ConfigError(flag, "angle must lie in [0, 180] degrees");
        }
    };
    check_angle(config.phi_deg, "--phi");
    check_angle(config.theta_deg, "--theta");
    if (config.phi_count < 2) throw ConfigError("--phi-count", "must be >= 2");
    if (config.theta_count < 2) throw ConfigError("--theta-count", "must be >= 2");
    if (config.quad_order < 8 || config.quad_order > 2048) {
        throw ConfigError("--quad-order", "must lie in [8, 2048]");
    }
    if (config.samples < 1) throw ConfigError("--samples", "must be >= 1");
    if (config.command == Command::sweep) {
        if (config.spacings.empty()) throw ConfigError("--spacings", "list must not be empty");
        for (const double s : config.spacings) {
            if (!std::isfinite(s) || s <= 0.0 || s > ArrayGeometry::kMaxSpacing) {
                throw ConfigError("--spacings", "every spacing must lie in (0, 10] wavelengths");
            }
        }
    }
}

void write_pattern_csv(std::ostream& out, const PatternGrid& grid, bool banner) {
    if (banner) {
        out << "# superdir pattern " << geometry_banner(grid.geom) << " kind="
            << (grid.kind == PatternKind::max_directivity ? "max_directivity" : "fixed_excitation")
            << '\n';
    }
    out << "phi_deg,theta_deg,directivity_db\n";
    for (std::size_t p = 0; p < grid.phi_samples.size(); ++p) {
        const std::string phi = format_number(to_degrees(grid.phi_samples[p]));
        for (std::size_t t = 0; t < grid.theta_samples.size(); ++t) {
            out << phi << ',' << format_number(to_degrees(grid.theta_samples[t])) << ','
                << format_number(grid.values_db(static_cast<Eigen::Index>(p),
                                                static_cast<Eigen::Index>(t)))
                << '\n';
        }
    }
}

void write_pattern_json(std::ostream& out, const PatternGrid& grid) {
    Json doc{{"geometry", geometry_json(grid.geom)},
             {"kind", grid.kind == PatternKind::max_directivity ? "max_directivity"
                                                                 : "fixed_excitation"},
             {"condition_estimate", grid.condition_estimate},
             {"jitter_applied", grid.jitter_applied}};
    Json phi = Json::array();
    for (const double v : grid.phi_samples) phi.push_back(to_degrees(v));
    Json theta = Json::array();
    for (const double v : grid.theta_samples) theta.push_back(to_degrees(v));
    Json values = Json::array();
    for (Eigen::Index p = 0; p < grid.values_db.rows(); ++p) {
        Json row = Json::array();
        for (Eigen::Index t = 0; t < grid.values_db.cols(); ++t) row.push_back(grid.values_db(p, t));
        values.push_back(std::move(row));
    }
    doc["phi_deg"] = std::move(phi);
    doc["theta_deg"] = std::move(theta);
    doc["directivity_db"] = std::move(values);
    out << doc.dump(2) << '\n';
}

void write_cut_csv(std::ostream& out, const ArrayGeometry& geom, const PlaneCut& cut, bool banner) {
    if (banner) {
        out << "# superdir cut " << geometry_banner(geom) << " phi_deg="
            << format_number(to_degrees(cut.phi)) << '\n';
    }
    out << "theta_deg,directivity_db\n";
    for (std::size_t t = 0; t < cut.theta.size(); ++t) {
        out << format_number(to_degrees(cut.theta[t])) << ',' << format_number(cut.db[t]) << '\n';
    }
}

void write_cut_json(std::ostream& out, const ArrayGeometry& geom, const PlaneCut& cut) {
    Json theta = Json::array();
    for (const double v : cut.theta) theta.push_back(to_degrees(v));
    Json doc{{"geometry", geometry_json(geom)},
             {"phi_deg", to_degrees(cut.phi)},
             {"theta_deg", std::move(theta)},
             {"directivity_db", cut.db}};
    out << doc.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, bool banner) {
    if (banner) {
        out << "# superdir sweep M=" << sweep.rows << " N=" << sweep.cols
            << " phi_deg=" << format_number(to_degrees(sweep.plane_phi)) << '\n';
    }
    out << "spacing_wl,theta_deg,directivity_db\n";
    for (const auto& entry : sweep.entries) {
        if (!entry.cut) {
            out << "# spacing " << format_number(entry.spacing) << " failed: " << entry.failure
                << '\n';
            continue;
        }
        const std::string spacing = format_number(entry.spacing);
        for (std::size_t t = 0; t < entry.cut->theta.size(); ++t) {
            out << spacing << ',' << format_number(to_degrees(entry.cut->theta[t])) << ','
                << format_number(entry.cut->db[t]) << '\n';
        }
    }
}

void write_sweep_json(std::ostream& out, const SweepResult& sweep) {
    Json theta = Json::array();
    for (const double v : sweep.theta) theta.push_back(to_degrees(v));
    Json curves = Json::array();
    for (const auto& entry : sweep.entries) {
        Json curve{{"spacing_wl", entry.spacing},
                   {"condition_estimate", entry.condition_estimate},
                   {"jitter_applied", entry.jitter_applied}};
        if (entry.cut) {
            curve["directivity_db"] = entry.cut->db;
        } else {
            curve["failure"] = entry.failure;
        }
        curves.push_back(std::move(curve));
    }
    Json doc{{"m", sweep.rows},
             {"n", sweep.cols},
             {"phi_deg", to_degrees(sweep.plane_phi)},
             {"theta_deg", std::move(theta)},
             {"curves", std::move(curves)}};
    out << doc.dump(2) << '\n';
}

void write_weights_json(std::ostream& out, const CouplingMatrix& coupling,
                        const OptimalExcitation& optimal) {
    const ArrayGeometry& geom = coupling.geometry();
    const Direction& dir = optimal.achieved.dir;
    Json weights = Json::array();
    for (Eigen::Index k = 0; k < optimal.weights.size(); ++k) {
        const ElementIndex idx = element_index(geom, k);
        const Complex w = optimal.weights(k);
        weights.push_back(Json{{"m", idx.m},
                               {"n", idx.n},
                               {"re", w.real()},
                               {"im", w.imag()},
                               {"abs", std::abs(w)},
                               {"phase_deg", std::arg(w) * 180.0 / kPi}});
    }
    Json doc{{"geometry", geometry_json(geom)},
             {"direction",
              Json{{"phi_rad", dir.phi()},
                   {"theta_rad", dir.theta()},
                   {"phi_deg", to_degrees(dir.phi())},
                   {"theta_deg", to_degrees(dir.theta())}}},
             {"g_star_db", optimal.achieved.db},
             {"g_star_linear", optimal.achieved.linear},
             {"condition_estimate", coupling.condition_estimate()},
             {"jitter_applied", coupling.jitter_applied()},
             {"normalization", "unit_norm_first_real_positive"},
             {"weights", std::move(weights)}};
    out << doc.dump(2) << '\n';
}

void write_weights_csv(std::ostream& out, const ArrayGeometry& geom,
                       const OptimalExcitation& optimal, bool banner) {
    if (banner) {
        out << "# superdir weights " << geometry_banner(geom)
            << " g_star_db=" << format_number(optimal.achieved.db) << '\n';
    }
    out << "m,n,re,im,abs,phase_deg\n";
    for (Eigen::Index k = 0; k < optimal.weights.size(); ++k) {
        const ElementIndex idx = element_index(geom, k);
        const Complex w = optimal.weights(k);
        out << idx.m << ',' << idx.n << ',' << format_number(w.real()) << ','
            << format_number(w.imag()) << ',' << format_number(std::abs(w)) << ','
            << format_number(std::arg(w) * 180.0 / kPi) << '\n';
    }
}

std::vector<PatternCsvRow> read_pattern_csv(std::istream& in) {
    std::vector<PatternCsvRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != "phi_deg,theta_deg,directivity_db") {
                throw Error("unexpected pattern CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        PatternCsvRow row{};
        double* fields[] = {&row.phi_deg, &row.theta_deg, &row.directivity_db};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int f = 0; f < 3; ++f) {
            const auto res = std::from_chars(p, end, *fields[f]);
            if (res.ec != std::errc{}) throw Error("malformed pattern CSV row: " + line);
            p = res.ptr;
            if (f < 2) {
                if (p == end || *p != ',') throw Error("malformed pattern CSV row: " + line);
                ++p;
            }
        }
        if (p != end) throw Error("trailing data in pattern CSV row: " + line);
        rows.push_back(row);
    }
    if (!header_seen) throw Error("pattern CSV has no header");
    return rows;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport run_verify_checks(const RunConfig& config) {
    const ArrayGeometry geom(config.rows, config.cols, config.dx, config.dz);
    const CouplingMatrix coupling(geom);
    const Eigen::Index size = geom.element_count();
    const bool dense = std::min(config.dx, config.dz) < 0.3;
    UniformSource rng(config.seed);
    std::vector<VerifyCheck> checks;

    // Sinc closed form against half-space quadrature, every element pair.
    {
        VerifyCheck c{"coupling entries vs quadrature", 0.0, 1e-6, true, ""};
        try {
            for (Eigen::Index i = 0; i < size; ++i) {
                for (Eigen::Index j = i; j < size; ++j) {
                    const double oracle = coupling_entry_oracle(
                        geom, element_index(geom, i), element_index(geom, j), config.quad_order);
                    c.residual = std::max(c.residual, std::abs(oracle - coupling.entries()(i, j)));
                }
            }
            c.passed = c.residual < c.threshold;
        } catch (const Error& e) {
            c.passed = false;
            c.note = e.what();
        }
        checks.push_back(std::move(c));
    }

    // Rayleigh-quotient directivity against the defining integral.
    {
        VerifyCheck c{"directivity vs quadrature", 0.0, 1e-6, true, ""};
        try {
            for (int k = 0; k < config.samples; ++k) {
                const ExcitationVector j = random_excitation(rng, size);
                const Direction dir = random_direction(rng);
                const double closed = directivity(coupling, j, dir).linear;
                const double oracle =
                    directivity_quadrature_oracle(j, geom, dir, config.quad_order);
                c.residual = std::max(c.residual, std::abs(closed - oracle) / std::abs(oracle));
            }
            c.passed = c.residual < c.threshold;
        } catch (const Error& e) {
            c.passed = false;
            c.note = e.what();
        }
        checks.push_back(std::move(c));
    }

    // Power iteration on the generalized eigenproblem against a^H C^-1 a.
    {
        VerifyCheck eig{"eigenvalue vs closed form", 0.0, 1e-8, true, ""};
        VerifyCheck rank{"second eigenvalue / first", 0.0, 1e-8, true, ""};
        try {
            for (int k = 0; k < config.samples; ++k) {
                const Direction dir = random_direction(rng);
                const double closed = max_directivity(coupling, dir).linear;
                const EigenCrosscheck ec = eigen_crosscheck(coupling, dir);
                eig.residual = std::max(eig.residual, std::abs(ec.lambda0 - closed) / ec.lambda0);
                rank.residual = std::max(rank.residual, ec.second_eigenvalue / ec.lambda0);
            }
            eig.passed = eig.residual < eig.threshold;
            rank.passed = rank.residual < rank.threshold;
        } catch (const Error& e) {
            eig.passed = rank.passed = false;
            eig.note = e.what();
        }
        checks.push_back(std::move(eig));
        checks.push_back(std::move(rank));
    }

    // Mean of G* over the half space equals the element count.
    {
        VerifyCheck c{"half-space mean of G* vs MN", 0.0, dense ? 1e-2 : 1e-3, true, ""};
        try {
            const double mean = average_max_directivity(coupling, config.quad_order, c.threshold / 10);
            c.residual = std::abs(mean - static_cast<double>(size)) / static_cast<double>(size);
            c.passed = c.residual < c.threshold;
            std::ostringstream note;
            note << "mean " << std::fixed << std::setprecision(4) << mean;
            c.note = note.str();
        } catch (const Error& e) {
            c.passed = false;
            c.note = e.what();
        }
        checks.push_back(std::move(c));
    }

    // No random excitation beats the optimum.
    {
        VerifyCheck c{"random excitations <= G*", 0.0, 1e-9, true, ""};
        try {
            double worst = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < config.samples; ++k) {
                const Direction dir = random_direction(rng);
                const double best = max_directivity(coupling, dir).linear;
                for (int r = 0; r < 200; ++r) {
                    const double g = directivity(coupling, random_excitation(rng, size), dir).linear;
                    worst = std::max(worst, g - best);
                }
            }
            c.residual = std::max(0.0, worst);
            c.passed = worst <= c.threshold;
        } catch (const Error& e) {
            c.passed = false;
            c.note = e.what();
        }
        checks.push_back(std::move(c));
    }

    return {std::move(checks), coupling.condition_estimate(), coupling.jitter_applied()};
}

int run_command(const RunConfig& config, std::ostream& data, std::ostream& console,
                std::ostream& errors) {
    try {
        validate(config);
    } catch (const ConfigError& e) {
        errors << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const ArrayGeometry geom(config.rows, config.cols, config.dx, config.dz);
        switch (config.command) {
            case Command::pattern: {
                const PatternGrid grid = pattern_grid(geom, config.phi_count, config.theta_count);
                if (config.format == OutputFormat::json) {
                    write_pattern_json(data, grid);
                } else {
                    write_pattern_csv(data, grid, config.banner);
                }
                console << peak_line(grid.peak()) << '\n';
                break;
            }
            case Command::cut: {
                const PlaneCut cut =
                    plane_cut(geom, Direction::from_degrees(config.phi_deg, 0.0).phi(),
                              config.theta_count);
                if (config.format == OutputFormat::json) {
                    write_cut_json(data, geom, cut);
                } else {
                    write_cut_csv(data, geom, cut, config.banner);
                }
                console << peak_line(cut.peak()) << '\n';
                break;
            }
            case Command::sweep: {
                const SweepResult sweep =
                    spacing_sweep(config.rows, config.cols, config.spacings, config.theta_count);
                if (config.format == OutputFormat::json) {
                    write_sweep_json(data, sweep);
                } else {
                    write_sweep_csv(data, sweep, config.banner);
                }
                for (const auto& entry : sweep.entries) {
                    if (entry.cut) {
                        console << "# spacing " << format_number(entry.spacing) << ' '
                                << peak_line(entry.cut->peak()).substr(2) << '\n';
                    } else {
                        errors << "spacing " << format_number(entry.spacing)
                               << " failed: " << entry.failure << '\n';
                    }
                }
                if (sweep.success_count() == 0) return kExitComputation;
                break;
            }
            case Command::weights: {
                const CouplingMatrix coupling(geom);
                const Direction dir = Direction::from_degrees(config.phi_deg, config.theta_deg);
                const OptimalExcitation optimal = optimal_excitation(coupling, dir);
                if (config.format == OutputFormat::csv) {
                    write_weights_csv(data, geom, optimal, config.banner);
                } else {
                    write_weights_json(data, coupling, optimal);
                }
                std::ostringstream s;
                s << std::fixed << std::setprecision(4) << "# G* " << optimal.achieved.db
                  << " dB (" << optimal.achieved.linear << " linear)";
                console << s.str() << '\n';
                break;
            }
            case Command::verify: {
                const VerifyReport report = run_verify_checks(config);
                write_report(data, report, geom, config.format, config.banner);
                for (const auto& c : report.checks) {
                    if (!c.passed) {
                        errors << "verify failed: " << c.name;
                        if (!c.note.empty()) errors << " (" << c.note << ')';
                        errors << '\n';
                        return kExitComputation;
                    }
                }
                break;
            }
        }
    } catch (const FactorizationFailure& e) {
        errors << "FactorizationFailure: " << e.what()
               << " (condition estimate " << e.condition_estimate() << ")\n";
        return kExitComputation;
    } catch (const ConfigError& e) {
        errors << "invalid configuration: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        errors << command_name(config.command) << " failed: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitOk;
}

int run(const RunConfig& config, std::ostream& console, std::ostream& errors) {
    if (config.out_path.empty()) {
        // Keep standard output parseable: JSON data and summaries would
        // otherwise interleave.
        std::ostream& summary = config.format == OutputFormat::json ? errors : console;
        return run_command(config, console, summary, errors);
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
        errors << "cannot open output file " << config.out_path << '\n';
        return kExitComputation;
    }
    const int code = run_command(config, file, console, errors);
    file.close();
    if (!file) {
        errors << "failed writing " << config.out_path << '\n';
        return kExitComputation;
    }
    return code;
}

}  // namespace superdir
