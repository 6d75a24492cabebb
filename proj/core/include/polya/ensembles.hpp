#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "polya/linalg.hpp"
#include "polya/polynomial.hpp"
#include "polya/weights.hpp"

namespace polya {

struct EnsembleConfig;

struct ShiftConfig {
    enum class Mode { none, fixed, ensemble };

    Mode mode = Mode::none;
    std::vector<double> x;                          // fixed: eigenvalues of the shift
    std::shared_ptr<const EnsembleConfig> second;   // ensemble: the other summand

    static ShiftConfig none() { return {}; }
    static ShiftConfig fixed(std::vector<double> x);
    static ShiftConfig ensemble(EnsembleConfig second);

    bool operator==(const ShiftConfig& o) const;
};

struct EnsembleConfig {
    WeightSpec weight;  // carries space, n and nu
    ShiftConfig shift;

    int n() const { return weight.n; }
    Space space() const { return weight.space; }
    double nu() const { return weight.nu; }
    bool operator==(const EnsembleConfig&) const = default;
};

// Throws UsageError on inconsistent configurations (space/n/nu mismatch, degenerate shifts).
void validate(const EnsembleConfig& cfg);

enum class Strategy { series, contour };

struct BiorthOptions {
    bool verify = true;              // compute the Gram matrix and throw on deviation
    double gram_tolerance = 1e-7;
    bool closed_form_convolution = true;  // use the semigroup closed form when available
};

// p_j (polynomials) and q_j (weight functions) with \int p_l q_m = delta_lm.
struct BiorthPair {
    Space space = Space::H2;
    double nu = 0.0;
    std::vector<Polynomial> polys;
    // On M the evaluator returns q_j(y) / y^nu.
    std::function<void(double, std::span<double>)> weight_fn;
    Domain domain;
    double gram_tolerance = 1e-7;

    int size() const { return static_cast<int>(polys.size()); }
    void weights(double y, std::span<double> out) const;
    void reduced_weights(double y, std::span<double> out) const { weight_fn(y, out); }
    double weight(int j, double y) const;
};

double vandermonde(std::span<const double> a);

struct NormalizationConstants {
    double c_n = 1.0;
    double c_star = 1.0;
};
NormalizationConstants normalization_constants(int n, double nu);

// Multiplicative normalization of the unshifted pair: p_j = kappa T[y^j] / N_j, q_j = D^j omega / kappa.
double pair_scale(const WeightSpec& w);

// The monomial map y^k -> sum_l (b_l / l!) D^l y^k induced by the reciprocal series.
Polynomial apply_reciprocal_map(const ReciprocalSeries& b, double nu, const Polynomial& f);

BiorthPair biorth_unshifted(const EnsembleConfig& cfg, const BiorthOptions& opt = {});
BiorthPair biorth_fixed(const EnsembleConfig& cfg, const BiorthOptions& opt = {});
BiorthPair biorth_polyshift(const EnsembleConfig& cfg, const BiorthOptions& opt = {});
BiorthPair biorth(const EnsembleConfig& cfg, const BiorthOptions& opt = {});

// G_lm = \int p_l q_m.
RMatrix gram_matrix(const BiorthPair& pair);
double gram_deviation(const RMatrix& g);

class KernelEvaluator {
public:
    explicit KernelEvaluator(EnsembleConfig cfg, Strategy strategy = Strategy::series, BiorthOptions opt = {});

    const EnsembleConfig& config() const { return cfg_; }
    const BiorthPair& pair() const { return pair_; }
    Strategy strategy() const { return strategy_; }
    double operator()(double yp, double y) const;

private:
    EnsembleConfig cfg_;
    Strategy strategy_;
    BiorthPair pair_;
};

double kernel_eval(const KernelEvaluator& k, double yp, double y);
// Independent evaluation: p_j from circle contours, q_j from inverse transforms.
double kernel_contour_eval(const KernelEvaluator& k, double yp, double y);
// Several points at once (shares the contour work for fixed yp).
std::vector<double> kernel_contour_eval(const KernelEvaluator& k, double yp, std::span<const double> ys);

double correlation_rk(const KernelEvaluator& k, std::span<const double> points);

double jpdf_eval(const EnsembleConfig& cfg, std::span<const double> x);

// Precomputed joint density (reuses the pair and normalization across calls).
class JointDensity {
public:
    explicit JointDensity(EnsembleConfig cfg);
    double operator()(std::span<const double> x) const;
    const BiorthPair& pair() const { return pair_; }
    // p(x) = constant * Delta(x) * det[q_j(x_k)]
    double constant() const { return constant_; }

private:
    EnsembleConfig cfg_;
    BiorthPair pair_;
    double constant_ = 1.0;
};

using ScalarFn = std::function<double(double)>;
// |(1/n!) \int det[phi_b(x_c)] det[psi_b(x_c)] dx - det[\int phi_b psi_c]| by tensor quadrature.
double andreief_check(const std::vector<ScalarFn>& phi, const std::vector<ScalarFn>& psi, const Domain& dom);

}  // namespace polya
