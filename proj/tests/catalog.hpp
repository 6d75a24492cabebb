#pragma once

#include <vector>

#include "polya/ensembles.hpp"

namespace polya::testing {

inline const std::vector<double> product_deltas{0.2, -0.1, 0.15, 0.25, -0.05, 0.1, 0.3, 0.2};
inline const std::vector<double> product_m_deltas{0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.5};

// Every family, with the index choices exercised by the suites.
inline std::vector<WeightSpec> catalog(int n) {
    return {
        WeightSpec::gaussian(n, 1.0),
        WeightSpec::laguerre_h2(n, 1.0),
        WeightSpec::polya_product(n, 0.3, product_deltas),
        WeightSpec::polya_product(n, 0.0, {0.5, -0.4, 0.3, -0.35, 0.45, -0.25, 0.2, -0.3, 0.4}),
        WeightSpec::polya_product(n, 0.0, {0.5, 0.4, 0.3, 0.35, 0.45, 0.25, 0.2, 0.3, 0.4}, Support::positive),
        WeightSpec::laguerre_m(n, 0.0),
        WeightSpec::laguerre_m(n, 1.0),
        WeightSpec::laguerre_m(n, 2.0),
        WeightSpec::laguerre_m(n, -0.5),
        WeightSpec::laguerre_m(n, 0.5),
        WeightSpec::polya_product_m(n, 1.0, product_m_deltas, 0.5),
    };
}

// The five configurations compared across evaluation routes.
inline std::vector<WeightSpec> route_catalog(int n) {
    return {
        WeightSpec::gaussian(n, 1.0),
        WeightSpec::laguerre_h2(n, 1.0),
        WeightSpec::laguerre_m(n, 1.0),
        WeightSpec::polya_product(n, 0.3, product_deltas),
        WeightSpec::polya_product_m(n, 1.0, product_m_deltas, 0.5),
    };
}

// Unit-spaced shift eigenvalues: centered on H2, starting at 1/2 on M.
inline std::vector<double> shift_points(Space space, int n) {
    std::vector<double> x;
    for (int k = 0; k < n; ++k) x.push_back(space == Space::M ? 0.5 + k : k - 0.5 * (n - 1));
    return x;
}

inline EnsembleConfig second_ensemble(const WeightSpec& w) {
    return {w.space == Space::H2 ? WeightSpec::gaussian(w.n, 0.5) : WeightSpec::laguerre_m(w.n, w.nu, 0.7), {}};
}

enum class Mode { none, fixed, ensemble };
inline const char* mode_name(Mode m) { return m == Mode::none ? "none" : m == Mode::fixed ? "fixed" : "ensemble"; }

inline EnsembleConfig make_config(const WeightSpec& w, Mode mode) {
    EnsembleConfig cfg{w, {}};
    if (mode == Mode::fixed) cfg.shift = ShiftConfig::fixed(shift_points(w.space, w.n));
    if (mode == Mode::ensemble) cfg.shift = ShiftConfig::ensemble(second_ensemble(w));
    return cfg;
}

// Five points spread over the bulk of the support.
inline std::vector<double> test_grid(const WeightSpec& w) {
    std::vector<double> g;
    for (int i = 0; i < 5; ++i) {
        if (w.space == Space::M)
            g.push_back(0.3 + 1.5 * i);
        else if (w.family == Family::laguerre_h2)
            g.push_back(0.5 + 1.5 * i);
        else
            g.push_back(-2.0 + i);
    }
    return g;
}

}  // namespace polya::testing
