#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "polya/cli.hpp"

using namespace polya::cli;

namespace {

struct Flags {
    std::string config, grid, range, route, out;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> count, bins, n, L, trials;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "ensemble config: JSON file path or inline JSON");
    sub->add_option("--grid", f.grid, "grid a:b:m");
    sub->add_option("--tol", f.tol, "tolerance");
    sub->add_option("--route", f.route, "series or contour")->check(CLI::IsMember({"series", "contour"}));
    sub->add_option("--out", f.out, "output file (default stdout)");
}

RunConfig assemble(const Flags& f) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : parse_config(f.config);
    if (!f.grid.empty()) cfg.grid = parse_grid(f.grid);
    if (f.tol) {
        if (!(*f.tol > 0.0)) throw ConfigError("--tol must be > 0");
        cfg.tolerance = *f.tol;
    }
    if (f.seed) cfg.seed = *f.seed;
    if (f.count) {
        if (*f.count < 1) throw ConfigError("--count must be >= 1");
        cfg.count = *f.count;
    }
    if (f.bins) {
        if (*f.bins < 10) throw ConfigError("--bins must be >= 10");
        cfg.bins = *f.bins;
    }
    if (!f.range.empty()) {
        const Grid g = parse_grid(f.range + ":2");
        cfg.range = std::pair{g.a, g.b};
    }
    if (!f.route.empty()) cfg.route = f.route == "series" ? polya::Strategy::series : polya::Strategy::contour;
    if (f.n) cfg.toeplitz_n = *f.n;
    if (f.L) cfg.toeplitz_L = *f.L;
    if (f.trials) cfg.trials = *f.trials;
    if (cfg.toeplitz_n != 0 && cfg.toeplitz_n < 2) throw ConfigError("--n must be >= 2");
    if (cfg.toeplitz_L < 0 || (cfg.toeplitz_n > 0 && cfg.toeplitz_L > cfg.toeplitz_n - 1))
        throw ConfigError("--L must satisfy 1 <= L <= n-1");
    if (cfg.trials < 1) throw ConfigError("--trials must be >= 1");
    if (!f.out.empty()) cfg.out = f.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polya ensemble densities, kernels and checks"};
    app.require_subcommand(1);
    Flags f;
    std::string svg_in, svg_out;

    const std::map<std::string, std::string> blurb = {
        {"density", "one-point density on a grid (CSV y,R1)"},
        {"kernel", "correlation kernel on grid x grid (CSV yp,y,K)"},
        {"biorth-check", "Gram matrix of the biorthogonal pair"},
        {"toeplitz-check", "banded Toeplitz/Hankel identity on random specs"},
        {"mc-compare", "sampled vs analytic density histogram"},
        {"convolve-check", "transform multiplicativity and kernel semigroup"},
    };
    for (const std::string& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name, blurb.at(name));
        add_common(sub, f);
        if (name == "toeplitz-check") {
            sub->add_option("--n", f.n, "matrix size (0: random in 2..8)");
            sub->add_option("--L", f.L, "lower bandwidth (0: random in 1..n-1)");
            sub->add_option("--trials", f.trials, "number of random specs");
            sub->add_option("--seed", f.seed, "RNG seed");
        }
        if (name == "mc-compare") {
            sub->add_option("--seed", f.seed, "RNG seed");
            sub->add_option("--count", f.count, "number of sampled matrices");
            sub->add_option("--bins", f.bins, "histogram bins");
            sub->add_option("--range", f.range, "histogram range lo:hi");
        }
    }
    CLI::App* svg = app.add_subcommand("svg", "render a CSV as an SVG plot");
    svg->add_option("--in", svg_in, "CSV input")->required();
    svg->add_option("--out", svg_out, "SVG output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (svg->parsed()) {
            emit_svg(svg_in, svg_out);
            return ok;
        }
        const RunConfig cfg = assemble(f);
        for (CLI::App* sub : app.get_subcommands()) return run_command(sub->get_name(), cfg, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return io;
    }
    return usage;
}
