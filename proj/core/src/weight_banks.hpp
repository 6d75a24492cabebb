#pragma once

#include <functional>
#include <span>
#include <vector>

#include "polya/ensembles.hpp"
#include "polya/inverse_transform.hpp"

namespace polya::detail {

// The q_j side of a pair; on M the evaluator returns q_j(y) / y^nu.
struct Bank {
    std::function<void(double, std::span<double>)> eval;
    Domain domain;
};

// q_j = D^j omega / kappa.
Bank unshifted_bank(const WeightSpec& w, Route route);
// q_j = omega(y - x_j) on H2, the radial average at (x_j, y) on M.
Bank fixed_bank(const WeightSpec& w, const std::vector<double>& x, Route route);
// q_j = omega * q~_j with the second pair's weights, by quadrature over a tabulation of omega.
Bank convolved_bank(const WeightSpec& w, const BiorthPair& second, Route route);
// Closed form omega * sigma = factor * combined when the second ensemble is unshifted.
bool closed_convolved_bank(const WeightSpec& w, const WeightSpec& sigma, Bank& out);

// Single omega value through the chosen route (reduced on M).
double weight_value(const WeightSpec& w, double x, Route route);

std::vector<Polynomial> unshifted_polys(const WeightSpec& w);

}  // namespace polya::detail
