#include "bettimc/walk.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>

namespace bettimc {

// =============================================================================
// Sample budget
// =============================================================================

double hoeffding_count(double B, int z, double delta, double failure_prob) {
    const double range_sq = std::pow(B, 2.0 * z);  // (B^z)^2, with 0^0 = 1
    return 2.0 * range_sq * std::log(2.0 / failure_prob) / (delta * delta);
}

SampleBudget hoeffding_budget(double B, int z, double delta, double failure_prob) {
    if (!(B >= 0.0) || !std::isfinite(B)) {
        throw InputError("norm bound B must be finite and nonnegative");
    }
    if (z < 0) {
        throw InputError("walk length z must be nonnegative");
    }
    if (!(delta > 0.0)) {
        throw InputError("delta must be positive");
    }
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
        throw InputError("failure probability must lie in (0, 1)");
    }
    const double count = hoeffding_count(B, z, delta, failure_prob);
    constexpr double limit = 9.2e18;  // just under 2^63
    if (!std::isfinite(count) || count > limit) {
        throw BudgetError("Hoeffding sample count for z = " + std::to_string(z) + " and delta = " +
                          std::to_string(delta) + " overflows a 64-bit counter; increase delta or use the "
                          "Chebyshev-accelerated estimator");
    }
    SampleBudget budget;
    budget.delta = delta;
    budget.failure_prob = failure_prob;
    budget.p = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(count)));
    return budget;
}

double column_norm_bound(const ComplexHandle& handle, const SpectralParams& params) {
    params.validate();
    const double lh = params.lambda_hat;
    const int n = handle.vertex_count();
    const int k = handle.k();
    if (handle.face_count() <= exact_norm_scan_limit) {
        double best = 0.0;
        for (const Face& f : handle.faces()) {
            best = std::max(best, laplacian_row(handle.complex(), f, params).h_column_norm);
        }
        return best;
    }
    if (handle.complex().is_clique()) {
        return std::max(1.0, n / lh) + n / lh;
    }
    const double lo = k >= 1 ? k + 1.0 : 0.0;
    const double diag_term = std::max(std::abs(1.0 - lo / lh), std::abs(1.0 - n / lh));
    return diag_term + static_cast<double>(k + 1) * (n - k - 1) / lh;
}

// =============================================================================
// Walks
// =============================================================================

WalkSample sample_walk(RowCache& rows, int z, RandomStream& rng, bool keep_path) {
    if (z < 0) {
        throw InputError("walk length z must be nonnegative");
    }
    WalkSample w;
    const std::uint32_t start = rows.handle().sample_index(rng);
    std::uint32_t current = start;
    double product = 1.0;
    int sign = 1;
    if (keep_path) {
        w.path.reserve(static_cast<std::size_t>(z) + 1);
        w.path.push_back(start);
    }
    for (int step = 0; step < z; ++step) {
        const CompiledRow& row = rows.row(current);
        if (row.absorbing()) {
            w.absorbed = true;
            w.product_of_norms = 0.0;
            w.sign_parity = sign;
            w.y_value = 0.0;
            return w;
        }
        product *= row.column_norm;
        const std::size_t pick = row.pick(rng.uniform01());
        sign *= row.signs[pick];
        current = row.targets[pick];
        if (keep_path) {
            w.path.push_back(current);
        }
    }
    w.product_of_norms = product;
    w.sign_parity = sign;
    w.y_value = current == start ? sign * product : 0.0;
    return w;
}

WalkSample sample_walk(const ComplexHandle& handle, int z, const SpectralParams& params, RandomStream& rng,
                       bool keep_path) {
    RowCache rows(handle, params);
    return sample_walk(rows, z, rng, keep_path);
}

namespace {

// Fixed-shape pairwise sum so the rounding pattern depends only on the length.
double pairwise_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    if (v.size() == 1) return v[0];
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace

TraceEstimate estimate_trace_power(const ComplexHandle& handle, int z, const SpectralParams& params,
                                   std::uint64_t sample_count, const RandomStream& rng,
                                   const EstimatorOptions& options, double bound_B) {
    params.validate();
    if (z < 0) {
        throw InputError("walk length z must be nonnegative");
    }
    if (sample_count == 0) {
        throw InputError("sample count must be at least 1");
    }
    const std::uint64_t block = std::max<std::uint64_t>(options.block_size, 1);
    const double B = bound_B >= 0.0 ? bound_B : column_norm_bound(handle, params);
    const double cap = std::pow(B, z) * (1.0 + 1e-9) + 1e-300;

    const std::uint64_t blocks = (sample_count + block - 1) / block;
    std::vector<double> sums(blocks, 0.0);
    std::vector<double> squares(blocks, 0.0);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            RowCache rows(handle, params, options.cache_capacity);
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= blocks) {
                    return;
                }
                RandomStream stream = rng.substream(b);
                const std::uint64_t count = std::min(block, sample_count - b * block);
                double s = 0.0;
                double sq = 0.0;
                for (std::uint64_t t = 0; t < count; ++t) {
                    const double y = sample_walk(rows, z, stream).y_value;
                    if (std::abs(y) > cap) {
                        throw NumericalError("walk value " + std::to_string(y) + " exceeds B^z = " +
                                             std::to_string(std::pow(B, z)));
                    }
                    s += y;
                    sq += y * y;
                }
                sums[b] = s;
                squares[b] = sq;
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next.store(blocks);
        }
    };

    const auto workers =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(options.workers, 1u), blocks));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    const double p = static_cast<double>(sample_count);
    const double total = pairwise_sum(sums);
    const double total_sq = pairwise_sum(squares);
    TraceEstimate est;
    est.z = z;
    est.sample_count = sample_count;
    est.mean = total / p;
    est.bound_B = B;
    if (sample_count > 1) {
        const double var = std::max(0.0, (total_sq - total * total / p) / (p - 1.0));
        est.empirical_std_error = std::sqrt(var / p);
    }
    return est;
}

TraceEstimate estimate_trace_power(const ComplexHandle& handle, int z, const SpectralParams& params,
                                   const SampleBudget& budget, const RandomStream& rng,
                                   const EstimatorOptions& options, double bound_B) {
    return estimate_trace_power(handle, z, params, budget.p, rng, options, bound_B);
}

} // namespace bettimc
