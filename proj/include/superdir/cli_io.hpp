#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "superdir/directivity.hpp"
#include "superdir/pattern.hpp"

namespace superdir {

enum class Command { pattern, cut, sweep, weights, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::pattern;
    int rows = 4;
    int cols = 8;
    double dx = 0.5;
    double dz = 0.5;
    double phi_deg = 90.0;
    double theta_deg = 90.0;
    int phi_count = 181;
    int theta_count = 181;
    std::vector<double> spacings{0.5, 0.3, 0.1};
    std::string out_path;  // empty means standard output
    OutputFormat format = OutputFormat::csv;
    int quad_order = 64;
    bool banner = true;
    std::uint64_t seed = 20250101;
    int samples = 50;  // random cases per check in `verify`
};

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& config);

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_number(double value);

void write_pattern_csv(std::ostream& out, const PatternGrid& grid, bool banner);
void write_pattern_json(std::ostream& out, const PatternGrid& grid);
void write_cut_csv(std::ostream& out, const ArrayGeometry& geom, const PlaneCut& cut, bool banner);
void write_cut_json(std::ostream& out, const ArrayGeometry& geom, const PlaneCut& cut);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, bool banner);
void write_sweep_json(std::ostream& out, const SweepResult& sweep);
void write_weights_json(std::ostream& out, const CouplingMatrix& coupling,
                        const OptimalExcitation& optimal);
void write_weights_csv(std::ostream& out, const ArrayGeometry& geom,
                       const OptimalExcitation& optimal, bool banner);

struct PatternCsvRow {
    double phi_deg;
    double theta_deg;
    double directivity_db;
};

/// Parses the output of write_pattern_csv, skipping `#` comment lines.
[[nodiscard]] std::vector<PatternCsvRow> read_pattern_csv(std::istream& in);

struct VerifyCheck {
    std::string name;
    double residual;
    double threshold;
    bool passed;
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    double condition_estimate;
    double jitter_applied;

    [[nodiscard]] bool passed() const;
};

/// Runs every cross-validation check for one geometry. Throws
/// FactorizationFailure when C cannot be factored at all.
[[nodiscard]] VerifyReport run_verify_checks(const RunConfig& config);

/**
 * Executes one command. Data goes to `data` (the output file or standard
 * output), human-readable summaries go to `console`, errors to `errors`.
 * Returns an exit code: 0 success, 1 computation failure, 2 invalid config.
 */
int run_command(const RunConfig& config, std::ostream& data, std::ostream& console,
                std::ostream& errors);

/// run_command with `data` bound to config.out_path (or `console` when empty).
int run(const RunConfig& config, std::ostream& console, std::ostream& errors);

}  // namespace superdir
