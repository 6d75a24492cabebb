#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "polya/cli.hpp"
#include "polya/errors.hpp"
#include "polya/montecarlo.hpp"
#include "polya/toeplitz.hpp"

namespace polya::cli {

namespace {

// Artifacts go to cfg.out when set, else to the given stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (cfg.out.empty()) {
        write(out);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw IoError("cannot write " + cfg.out);
    write(f);
    f.flush();
    if (!f) throw IoError("write failed for " + cfg.out);
}

const EnsembleConfig& need_ensemble(const RunConfig& cfg, const std::string& cmd) {
    if (!cfg.ensemble) throw ConfigError(cmd + " needs an ensemble config (--config)");
    return *cfg.ensemble;
}

std::string sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << v;
    return s.str();
}

double diagonal(const KernelEvaluator& k, double y) {
    if (k.config().space() == Space::M && y < 0.0) return 0.0;
    return k(y, y);
}

int density(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const KernelEvaluator k(need_ensemble(cfg, "density"), cfg.route);
    const Grid& g = cfg.grid;
    std::vector<double> r1(g.m);
    for (int i = 0; i < g.m; ++i) r1[i] = diagonal(k, g.at(i));
    emit(cfg, out, [&](std::ostream& o) {
        o << "y,R1\n";
        for (int i = 0; i < g.m; ++i) o << csv_number(g.at(i)) << ',' << csv_number(r1[i]) << '\n';
    });
    double mass = 0.0;
    const double h = (g.b - g.a) / (g.m - 1);
    for (int i = 0; i < g.m; ++i) mass += (i == 0 || i == g.m - 1 ? 0.5 : 1.0) * h * r1[i];
    const int n = k.config().n();
    log << "density: " << g.m << " points, trapezoid mass " << csv_number(mass) << " (n = " << n << ")\n";
    if (cfg.tolerance && std::abs(mass - n) > *cfg.tolerance) {
        log << "density: mass deviates from n by " << sci(std::abs(mass - n)) << " > " << sci(*cfg.tolerance) << '\n';
        return accuracy;
    }
    return ok;
}

int kernel(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const KernelEvaluator k(need_ensemble(cfg, "kernel"), cfg.route);
    const Grid& g = cfg.grid;
    const bool m_space = k.config().space() == Space::M;
    emit(cfg, out, [&](std::ostream& o) {
        o << "yp,y,K\n";
        for (int i = 0; i < g.m; ++i)
            for (int j = 0; j < g.m; ++j) {
                const double yp = g.at(i), y = g.at(j);
                const double v = m_space && (y < 0.0 || yp < 0.0) ? 0.0 : k(yp, y);
                o << csv_number(yp) << ',' << csv_number(y) << ',' << csv_number(v) << '\n';
            }
    });
    log << "kernel: " << g.m * g.m << " rows\n";
    return ok;
}

int biorth_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    BiorthOptions opt;
    opt.verify = false;
    const BiorthPair pair = biorth(need_ensemble(cfg, "biorth-check"), opt);
    const RMatrix g = gram_matrix(pair);
    const double dev = gram_deviation(g);
    const double tol = cfg.tolerance.value_or(1e-7);
    emit(cfg, out, [&](std::ostream& o) {
        o << "Gram deviation G - I (" << g.rows() << " x " << g.cols() << "):\n";
        for (std::size_t r = 0; r < g.rows(); ++r) {
            for (std::size_t c = 0; c < g.cols(); ++c) o << (c ? " " : "") << std::setw(10) << sci(g(r, c) - (r == c ? 1.0 : 0.0));
            o << '\n';
        }
        o << "max |G-I| = " << sci(dev) << '\n';
    });
    if (dev > tol) {
        log << "biorth-check: max |G-I| " << sci(dev) << " exceeds " << sci(tol) << '\n';
        return accuracy;
    }
    return ok;
}

int toeplitz_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const ToeplitzStats st = toeplitz_trials(cfg.toeplitz_n, cfg.toeplitz_L, cfg.trials, cfg.seed);
    const double tol = cfg.tolerance.value_or(1e-10);
    emit(cfg, out, [&](std::ostream& o) {
        o << "toeplitz-check: trials=" << st.trials << " n=" << (cfg.toeplitz_n > 0 ? std::to_string(cfg.toeplitz_n) : "2..8")
          << " L=" << (cfg.toeplitz_L > 0 ? std::to_string(cfg.toeplitz_L) : "1..n-1") << " seed=" << cfg.seed
          << " max_residual=" << sci(st.max_residual) << " mean_residual=" << sci(st.mean_residual) << '\n';
    });
    if (st.max_residual >= tol) {
        log << "toeplitz-check: max residual " << sci(st.max_residual) << " not below " << sci(tol) << '\n';
        return accuracy;
    }
    return ok;
}

SampleBatch sample_for(const EnsembleConfig& e, int count, std::uint64_t seed) {
    const WeightSpec& w = e.weight;
    if (w.family == Family::gaussian) return sample_h2_gaussian(e.n(), w.variance, e.shift, count, seed);
    if (w.family == Family::laguerre_m && e.shift.mode == ShiftConfig::Mode::none) {
        SampleBatch b = admissible_nu(w.nu) && w.nu == std::floor(w.nu)
                            ? sample_m_ginibre(e.n(), static_cast<int>(w.nu), count, seed)
                            : sample_h1_gaussian(e.n(), w.nu > 0.0 ? Parity::odd : Parity::even, count, seed);
        for (auto& s : b.spectra)
            for (double& x : s) x *= w.scale;
        return b;
    }
    throw ConfigError("mc-compare samples gaussian ensembles on H2 (any shift mode with a gaussian second ensemble) "
                      "and unshifted laguerre_m on M");
}

int mc_compare(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const EnsembleConfig& e = need_ensemble(cfg, "mc-compare");
    const SampleBatch batch = sample_for(e, cfg.count, cfg.seed);
    const Histogram h = cfg.range ? empirical_density(batch, cfg.bins, cfg.range->first, cfg.range->second)
                                  : empirical_density(batch, cfg.bins);
    const KernelEvaluator k(e, cfg.route);
    const DensityComparison cmp = compare_density(h, [&](double y) { return diagonal(k, y); });
    emit(cfg, out, [&](std::ostream& o) {
        o << "bin_lo,bin_hi,empirical,analytic,poisson_sigma\n";
        for (int b = 0; b < h.bins(); ++b)
            o << csv_number(h.edge(b)) << ',' << csv_number(h.edge(b + 1)) << ',' << csv_number(h.heights[b]) << ','
              << csv_number(cmp.analytic[b]) << ',' << csv_number(cmp.sigma[b]) << '\n';
    });
    const double tol = cfg.tolerance.value_or(5.0);
    log << "mc-compare: count=" << batch.count << " bins=" << h.bins() << " seed=" << cfg.seed
        << " max_deviation_sigma=" << std::fixed << std::setprecision(3) << cmp.max_sigmas << std::defaultfloat
        << " bound=" << tol << (cmp.max_sigmas <= tol ? " PASS" : " FAIL") << '\n';
    return cmp.max_sigmas <= tol ? ok : accuracy;
}

int convolve_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const EnsembleConfig& e = need_ensemble(cfg, "convolve-check");
    const WeightSpec& w1 = e.weight;
    const bool paired = e.shift.mode == ShiftConfig::Mode::ensemble;
    const WeightSpec w2 = paired ? e.shift.second->weight : w1;
    const Space space = w1.space;

    const Domain dom = convolution_domain(support_domain(w1), support_domain(w2), space);
    const NodeSet table = tabulate_domain(dom, [&](double x) { return convolve(w1, w2, x); });
    const double r1 = transform_model(w1).holomorphy_radius(), r2 = transform_model(w2).holomorphy_radius();
    const double strip = std::min({1.0, r1, r2});
    double transform_residual = 0.0;
    for (int k = 0; k < 10; ++k) {
        const cplx z = space == Space::H2 ? cplx(-1.8 + 0.4 * k, 0.2 * strip * (k % 2))
                                          : cplx(0.1 + 0.3 * k, 0.2 * strip * (k % 2 ? 1.0 : -1.0));
        cplx lhs = 0.0;
        for (std::size_t i = 0; i < table.size(); ++i)
            lhs += table.weight[i] * table.value[i] * transform_kernel(space, w1.nu, table.node[i], z);
        const cplx rhs = eval_transform(w1, z) * eval_transform(w2, z);
        transform_residual = std::max(transform_residual, std::abs(lhs - rhs) / std::abs(rhs));
    }

    double kernel_residual = -1.0;
    std::string kernel_note = "no closed-form semigroup partner";
    if (paired && e.shift.second->shift.mode == ShiftConfig::Mode::none) {
        if (auto merged = combine(w1, w2)) {
            BiorthOptions generic;
            generic.closed_form_convolution = false;
            const KernelEvaluator shifted(e, Strategy::series, generic);
            WeightSpec c = merged->first;
            c.n = w1.n;
            const KernelEvaluator direct(EnsembleConfig{c, {}});
            kernel_residual = 0.0;
            const Grid& g = cfg.grid;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double yp = g.a + (g.b - g.a) * (i + 0.5) / 5.0, y = g.a + (g.b - g.a) * (j + 0.5) / 5.0;
                    if (space == Space::M && (y <= 0.0 || yp <= 0.0)) continue;
                    kernel_residual = std::max(kernel_residual, std::abs(shifted(yp, y) - direct(yp, y)));
                }
            kernel_note = "vs unshifted " + to_string(c.family);
        }
    }
    const double tol_t = cfg.tolerance.value_or(1e-8), tol_k = cfg.tolerance.value_or(1e-6);
    emit(cfg, out, [&](std::ostream& o) {
        o << "convolve-check: transform_multiplicativity max_rel_residual=" << sci(transform_residual) << " (10 points)\n";
        if (kernel_residual >= 0.0)
            o << "convolve-check: semigroup_kernel max_abs_residual=" << sci(kernel_residual) << " (" << kernel_note << ", 25 points)\n";
        else
            o << "convolve-check: semigroup_kernel skipped (" << kernel_note << ")\n";
    });
    const bool pass = transform_residual <= tol_t && kernel_residual <= tol_k;
    if (!pass) log << "convolve-check: residual above tolerance\n";
    return pass ? ok : accuracy;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"density", "kernel", "biorth-check", "toeplitz-check", "mc-compare", "convolve-check"};
    return names;
}

int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        if (cmd == "density") return density(cfg, out, log);
        if (cmd == "kernel") return kernel(cfg, out, log);
        if (cmd == "biorth-check") return biorth_check(cfg, out, log);
        if (cmd == "toeplitz-check") return toeplitz_check(cfg, out, log);
        if (cmd == "mc-compare") return mc_compare(cfg, out, log);
        if (cmd == "convolve-check") return convolve_check(cfg, out, log);
        log << "unknown command " << cmd << '\n';
        return usage;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return usage;
    } catch (const UsageError& e) {
        log << "error: " << e.what() << '\n';
        return usage;
    } catch (const IoError& e) {
        log << "error: " << e.what() << '\n';
        return io;
    } catch (const AccuracyError& e) {
        log << "accuracy failure: " << e.what() << '\n';
        return accuracy;
    } catch (const DomainError& e) {
        log << "accuracy failure: " << e.what() << '\n';
        return accuracy;
    }
}

}  // namespace polya::cli
