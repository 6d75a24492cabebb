#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polya/ensembles.hpp"

namespace polya::cli {

enum ExitCode { ok = 0, usage = 2, accuracy = 3, io = 4 };

// Schema violations and malformed inputs (exit 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Unreadable or unwritable files (exit 4).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a:b:m": m equally spaced points from a to b.
struct Grid {
    double a = -6.0, b = 6.0;
    int m = 201;

    double at(int k) const { return a + (b - a) * k / (m - 1); }
    bool operator==(const Grid&) const = default;
};
Grid parse_grid(const std::string& text);
std::string to_string(const Grid& g);

struct RunConfig {
    std::optional<EnsembleConfig> ensemble;
    Grid grid;
    std::optional<double> tolerance;            // command default when absent
    std::uint64_t seed = 1;
    int count = 100000;
    int bins = 80;
    std::optional<std::pair<double, double>> range;  // histogram range, data range when absent
    Strategy route = Strategy::series;
    int toeplitz_n = 6;
    int toeplitz_L = 0;                         // 0: every L in [1, n-1]
    int trials = 100;
    std::string out;                            // empty: stdout

    bool operator==(const RunConfig&) const = default;
};

// Inline JSON if the text starts with '{', otherwise a path.
RunConfig parse_config(const std::string& path_or_json);
RunConfig parse_config_json(const std::string& json_text);
std::string serialize(const RunConfig& cfg);
EnsembleConfig parse_ensemble_json(const std::string& json_text);
std::string serialize(const EnsembleConfig& cfg);

// CSV number format: 17 significant digits.
std::string csv_number(double v);

const std::vector<std::string>& command_names();
// Writes artifacts to cfg.out (or out) and a human-readable report to log.
int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& log);

// One polyline per data column after the first; mc-compare CSVs get a step plot for the
// empirical column and a line for the analytic one.
std::string render_svg(const std::string& csv_text);
void emit_svg(const std::string& csv_path, const std::string& svg_path);

}  // namespace polya::cli
