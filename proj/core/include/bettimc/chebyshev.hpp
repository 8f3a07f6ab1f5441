#pragma once

#include "bettimc/complex.hpp"
#include "bettimc/laplacian.hpp"
#include "bettimc/random_stream.hpp"
#include "bettimc/walk.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bettimc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Monomial coefficients c_0..c_i of the Chebyshev polynomial T_i, exact.
std::vector<BigInt> chebyshev_monomial_coeffs(int i);

/**
 * Degree-d polynomial p(x) = sum_l b_l x^l approximating x^r on [-1, 1],
 * obtained by truncating the Chebyshev series of x^r after T_d:
 * p = alpha_0 + sum_{i=1..d} 2 alpha_i T_i, alpha_i = C(r, (r-i)/2) / 2^r for
 * i of the same parity as r and 0 otherwise.
 */
struct ChebyshevExpansion {
    int r = 0;
    int d = 0;
    std::vector<Rational> alpha;   ///< alpha_0..alpha_d
    std::vector<Rational> b_exact; ///< b_0..b_d
    std::vector<double> b;         ///< b_exact rounded to double

    /// Horner evaluation of sum_l b_l x^l in long double.
    double evaluate(double x) const;
    /// max |p(x) - x^r| over `points` equispaced points of [-1, 1].
    double max_grid_error(int points = 1001) const;
    /// sum_l |b_l|
    double coefficient_l1() const;
};

/// Throws InputError unless 0 <= d <= r.
ChebyshevExpansion build_expansion(int r, int d);

/// Smallest d with d >= sqrt(2 r ln(2 / delta_cheb)), capped at r.
int approximation_degree(int r, double delta_cheb);

nlohmann::json to_json(const ChebyshevExpansion& e);

/**
 * Parameters of the Chebyshev-accelerated Betti estimator:
 * r = ceil(ln(3/eps) / gamma), d = min(r, ceil(sqrt(2/gamma) ln(6/eps))),
 * per-power precision delta = eps / (3 (d+1) 2^(3d)). Logs are natural.
 */
struct BettiSchedule {
    int r = 0;
    int d = 0;
    int d_uncapped = 0;
    double delta = 0.0;
};

/// Throws InputError unless gamma is in (0, 1] and epsilon in (0, 1).
BettiSchedule betti_schedule(double gamma, double epsilon);

/**
 * How the per-power Hoeffding sample count interacts with `max_budget`.
 * `strict` raises BudgetError when any count exceeds the limit; `cap` runs
 * with min(p, max_budget) samples and reports that the guarantee is not met.
 */
enum class BudgetPolicy { strict, cap };

const char* to_string(BudgetPolicy policy) noexcept;

struct BettiOptions {
    double failure_prob = 0.01;  ///< split evenly over the d+1 trace estimates
    std::uint64_t max_budget = 1'000'000;
    BudgetPolicy policy = BudgetPolicy::cap;
    EstimatorOptions estimator;
};

struct PowerEstimate {
    TraceEstimate trace;
    double hoeffding_required = 0.0;  ///< uncapped Hoeffding count (may exceed 2^64)
    bool capped = false;
};

struct BettiEstimate {
    double nu_tilde = 0.0;  ///< clamped to [0, 1]
    double nu_raw = 0.0;
    double epsilon = 0.0;
    BettiSchedule schedule;
    ChebyshevExpansion expansion;
    std::vector<PowerEstimate> per_power;
    bool clamped = false;
    bool guarantee_met = true;  ///< false if any power ran on a capped budget
    std::uint64_t samples_used = 0;
    /// 1-sigma spread of nu_raw implied by the per-power standard errors.
    double propagated_std_error = 0.0;
    std::vector<std::string> warnings;
};

/**
 * Estimates beta_k / d_k to additive epsilon: estimates Tr(H^l)/d_k for
 * l = 0..d with substream l of `rng`, then combines them with the expansion
 * coefficients of x^r. Throws BudgetError under the strict policy.
 */
BettiEstimate estimate_betti(const ComplexHandle& handle, const SpectralParams& params, double epsilon,
                             const RandomStream& rng, const BettiOptions& options = {});

nlohmann::json to_json(const TraceEstimate& t);
nlohmann::json to_json(const BettiEstimate& e);

} // namespace bettimc
