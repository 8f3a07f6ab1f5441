#pragma once

#include "bettimc/complex.hpp"
#include "bettimc/laplacian.hpp"
#include "bettimc/random_stream.hpp"

#include <cstdint>
#include <vector>

namespace bettimc {

/// One realised path of the sign-and-norm weighted Markov chain over k-faces.
struct WalkSample {
    std::vector<std::uint32_t> path;  ///< face indices j_0..j_z; only kept on request
    double y_value = 0.0;
    double product_of_norms = 0.0;
    int sign_parity = 1;
    bool absorbed = false;  ///< hit a zero-norm column before step z
};

/// Mean of Y_z samples, i.e. an estimate of Tr(H^z) / d_k.
struct TraceEstimate {
    int z = 0;
    double mean = 0.0;
    std::uint64_t sample_count = 0;
    double empirical_std_error = 0.0;
    double bound_B = 0.0;
};

/**
 * Hoeffding sample count for a mean of variables in [-B^z, B^z]:
 * p = ceil(2 B^(2z) ln(2 / failure_prob) / delta^2).
 */
struct SampleBudget {
    double delta = 0.1;
    double failure_prob = 0.01;
    std::uint64_t p = 1;
};

/// Throws InputError on bad arguments and BudgetError when p does not fit in 63 bits.
/// B = 0 with z >= 1 gives p = 1 (every sample is exactly zero).
SampleBudget hoeffding_budget(double B, int z, double delta, double failure_prob);

/// Same formula evaluated in floating point without the overflow check.
double hoeffding_count(double B, int z, double delta, double failure_prob);

/// Largest d_k for which column_norm_bound scans every row instead of using the analytic bound.
inline constexpr std::uint32_t exact_norm_scan_limit = 10000;

/**
 * B = max_j ||H_{.,j}||_1. Exact row scan when d_k <= exact_norm_scan_limit,
 * otherwise an analytic bound from the diagonal range and row sparsity:
 * max(1, n/lambda_hat) + n/lambda_hat for clique complexes (2n/lambda_hat once
 * lambda_hat <= n), and max|1 - diag/lambda_hat| + (k+1)(n-k-1)/lambda_hat
 * over the admissible diagonal range for general ones.
 */
double column_norm_bound(const ComplexHandle& handle, const SpectralParams& params);

/**
 * Draws j_0 uniformly, takes z steps of the chain and evaluates
 * Y_z = <j_0|j_z> prod_l sign(H_{j_{l+1} j_l}) ||H_{.,j_l}||_1.
 * A walk that reaches an absorbing face before step z is worth zero.
 */
WalkSample sample_walk(RowCache& rows, int z, RandomStream& rng, bool keep_path = false);

WalkSample sample_walk(const ComplexHandle& handle, int z, const SpectralParams& params,
                       RandomStream& rng, bool keep_path = false);

struct EstimatorOptions {
    unsigned workers = 1;
    /// Samples per deterministic block; block b draws from rng.substream(b).
    std::uint64_t block_size = 4096;
    std::size_t cache_capacity = RowCache::default_capacity;
};

/**
 * Mean of `sample_count` independent Y_z samples.
 *
 * Samples are grouped into fixed-size blocks, each seeded from its own
 * substream of `rng`, and block sums are combined by a fixed pairwise tree.
 * The result depends only on (rng seed and stream, sample_count, block_size),
 * not on the worker count. `bound_B` is computed with column_norm_bound unless
 * supplied; every sample is checked against B^z.
 */
TraceEstimate estimate_trace_power(const ComplexHandle& handle, int z, const SpectralParams& params,
                                   std::uint64_t sample_count, const RandomStream& rng,
                                   const EstimatorOptions& options = {}, double bound_B = -1.0);

/// Same, with the sample count taken from `budget.p`.
TraceEstimate estimate_trace_power(const ComplexHandle& handle, int z, const SpectralParams& params,
                                   const SampleBudget& budget, const RandomStream& rng,
                                   const EstimatorOptions& options = {}, double bound_B = -1.0);

} // namespace bettimc
