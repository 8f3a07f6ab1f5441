#include "bettimc/chebyshev.hpp"

#include "bettimc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bettimc {

// =============================================================================
// Expansion of x^r
// =============================================================================

namespace {

// T_0..T_d in the monomial basis via T_i = 2x T_{i-1} - T_{i-2}.
std::vector<std::vector<BigInt>> chebyshev_table(int d) {
    std::vector<std::vector<BigInt>> t;
    t.push_back({BigInt(1)});
    if (d >= 1) {
        t.push_back({BigInt(0), BigInt(1)});
    }
    for (int i = 2; i <= d; ++i) {
        const auto& a = t[static_cast<std::size_t>(i - 1)];
        const auto& b = t[static_cast<std::size_t>(i - 2)];
        std::vector<BigInt> c(static_cast<std::size_t>(i) + 1, BigInt(0));
        for (std::size_t l = 0; l < a.size(); ++l) {
            c[l + 1] += 2 * a[l];
        }
        for (std::size_t l = 0; l < b.size(); ++l) {
            c[l] -= b[l];
        }
        t.push_back(std::move(c));
    }
    return t;
}

BigInt binomial(int n, int m) {
    if (m < 0 || m > n) {
        return BigInt(0);
    }
    m = std::min(m, n - m);
    BigInt out = 1;
    for (int i = 1; i <= m; ++i) {
        out *= n - m + i;
        out /= i;
    }
    return out;
}

} // namespace

std::vector<BigInt> chebyshev_monomial_coeffs(int i) {
    if (i < 0) {
        throw InputError("Chebyshev index must be nonnegative");
    }
    return chebyshev_table(i).back();
}

ChebyshevExpansion build_expansion(int r, int d) {
    if (r < 0 || d < 0) {
        throw InputError("expansion needs r >= 0 and d >= 0");
    }
    if (d > r) {
        throw InputError("expansion degree d = " + std::to_string(d) + " exceeds r = " + std::to_string(r));
    }
    ChebyshevExpansion e;
    e.r = r;
    e.d = d;
    const BigInt two_r = BigInt(1) << r;
    for (int i = 0; i <= d; ++i) {
        if ((r - i) % 2 == 0) {
            e.alpha.emplace_back(binomial(r, (r - i) / 2), two_r);
        } else {
            e.alpha.emplace_back(0);
        }
    }
    const auto t = chebyshev_table(d);
    e.b_exact.assign(static_cast<std::size_t>(d) + 1, Rational(0));
    for (int i = 0; i <= d; ++i) {
        const Rational& a = e.alpha[static_cast<std::size_t>(i)];
        if (a == 0) {
            continue;
        }
        const Rational weight = i == 0 ? a : 2 * a;
        const auto& c = t[static_cast<std::size_t>(i)];
        for (std::size_t l = 0; l < c.size(); ++l) {
            if (c[l] != 0) {
                e.b_exact[l] += weight * c[l];
            }
        }
    }
    e.b.reserve(e.b_exact.size());
    for (const auto& q : e.b_exact) {
        e.b.push_back(q.convert_to<double>());
    }
    return e;
}

double ChebyshevExpansion::evaluate(double x) const {
    long double acc = 0.0L;
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        acc = acc * x + static_cast<long double>(*it);
    }
    return static_cast<double>(acc);
}

double ChebyshevExpansion::max_grid_error(int points) const {
    if (points < 2) {
        throw InputError("grid needs at least two points");
    }
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = -1.0 + 2.0 * i / (points - 1);
        const long double target = std::pow(static_cast<long double>(x), r);
        worst = std::max(worst, static_cast<double>(std::fabs(static_cast<long double>(evaluate(x)) - target)));
    }
    return worst;
}

double ChebyshevExpansion::coefficient_l1() const {
    double s = 0.0;
    for (double v : b) {
        s += std::abs(v);
    }
    return s;
}

int approximation_degree(int r, double delta_cheb) {
    if (r < 0 || !(delta_cheb > 0.0)) {
        throw InputError("approximation_degree needs r >= 0 and delta > 0");
    }
    const double need = std::sqrt(2.0 * r * std::log(2.0 / delta_cheb));
    return std::min(r, static_cast<int>(std::ceil(need)));
}

nlohmann::json to_json(const ChebyshevExpansion& e) {
    return {{"r", e.r}, {"d", e.d}, {"b", e.b}};
}

// =============================================================================
// Schedule and estimator
// =============================================================================

BettiSchedule betti_schedule(double gamma, double epsilon) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InputError("gamma must lie in (0, 1]");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InputError("epsilon must lie in (0, 1)");
    }
    BettiSchedule s;
    s.r = static_cast<int>(std::ceil(std::log(3.0 / epsilon) / gamma));
    s.d_uncapped = static_cast<int>(std::ceil(std::sqrt(2.0 / gamma) * std::log(6.0 / epsilon)));
    s.d = std::min(s.d_uncapped, s.r);
    s.delta = epsilon / (3.0 * (s.d + 1) * std::ldexp(1.0, 3 * s.d));
    return s;
}

const char* to_string(BudgetPolicy policy) noexcept {
    return policy == BudgetPolicy::strict ? "strict" : "cap";
}

BettiEstimate estimate_betti(const ComplexHandle& handle, const SpectralParams& params, double epsilon,
                             const RandomStream& rng, const BettiOptions& options) {
    params.validate();
    if (!(options.failure_prob > 0.0 && options.failure_prob < 1.0)) {
        throw InputError("failure probability must lie in (0, 1)");
    }
    if (options.max_budget == 0) {
        throw InputError("max budget must be positive");
    }
    BettiEstimate out;
    out.epsilon = epsilon;
    out.schedule = betti_schedule(params.gamma, epsilon);
    out.expansion = build_expansion(out.schedule.r, out.schedule.d);

    const double B = column_norm_bound(handle, params);
    const int d = out.schedule.d;
    const double phi_each = options.failure_prob / (d + 1);

    struct Plan {
        int power;
        double required;
        std::uint64_t samples;
        bool capped;
    };
    std::vector<Plan> plan;
    for (int l = 0; l <= d; ++l) {
        // powers with a zero coefficient do not enter the combination
        if (out.expansion.b_exact[static_cast<std::size_t>(l)] == 0) {
            continue;
        }
        const double required = hoeffding_count(B, l, out.schedule.delta, phi_each);
        const double limit = static_cast<double>(options.max_budget);
        if (!(required <= limit)) {
            if (options.policy == BudgetPolicy::strict) {
                std::ostringstream msg;
                msg << "power " << l << " needs " << required << " samples for delta = " << out.schedule.delta
                    << ", above max budget " << options.max_budget
                    << "; raise epsilon or gamma, raise --max-budget, or allow capping";
                throw BudgetError(msg.str());
            }
            plan.push_back({l, required, options.max_budget, true});
        } else {
            plan.push_back({l, required, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(required))),
                            false});
        }
    }

    double raw = 0.0;
    double var = 0.0;
    int capped_count = 0;
    for (const Plan& step : plan) {
        PowerEstimate pe;
        pe.hoeffding_required = step.required;
        pe.capped = step.capped;
        pe.trace = estimate_trace_power(handle, step.power, params, step.samples,
                                        rng.substream(static_cast<std::uint64_t>(step.power)), options.estimator, B);
        const double coeff = out.expansion.b[static_cast<std::size_t>(step.power)];
        raw += coeff * pe.trace.mean;
        var += coeff * coeff * pe.trace.empirical_std_error * pe.trace.empirical_std_error;
        out.samples_used += pe.trace.sample_count;
        capped_count += step.capped ? 1 : 0;
        out.per_power.push_back(std::move(pe));
    }
    out.nu_raw = raw;
    out.propagated_std_error = std::sqrt(var);
    out.nu_tilde = std::clamp(raw, 0.0, 1.0);
    out.clamped = out.nu_tilde != raw;
    out.guarantee_met = capped_count == 0;
    if (capped_count > 0) {
        out.warnings.push_back(std::to_string(capped_count) + " of " + std::to_string(plan.size()) +
                               " trace estimates ran on the capped budget of " + std::to_string(options.max_budget) +
                               " samples; the Hoeffding guarantee is not met, see per-power std errors");
    }
    if (out.clamped) {
        out.warnings.push_back("raw estimate clamped to [0, 1]");
    }
    return out;
}

nlohmann::json to_json(const TraceEstimate& t) {
    return {{"z", t.z},
            {"mean", t.mean},
            {"sample_count", t.sample_count},
            {"std_error", t.empirical_std_error},
            {"bound_B", t.bound_B}};
}

nlohmann::json to_json(const BettiEstimate& e) {
    nlohmann::json powers = nlohmann::json::array();
    for (const auto& p : e.per_power) {
        auto j = to_json(p.trace);
        j["hoeffding_required"] = p.hoeffding_required;
        j["capped"] = p.capped;
        powers.push_back(std::move(j));
    }
    return {{"nu_tilde", e.nu_tilde},
            {"nu_raw", e.nu_raw},
            {"clamped", e.clamped},
            {"epsilon", e.epsilon},
            {"r", e.schedule.r},
            {"d", e.schedule.d},
            {"d_uncapped", e.schedule.d_uncapped},
            {"delta", e.schedule.delta},
            {"expansion", to_json(e.expansion)},
            {"per_power", std::move(powers)},
            {"guarantee_met", e.guarantee_met},
            {"samples_used", e.samples_used},
            {"propagated_std_error", e.propagated_std_error}};
}

} // namespace bettimc
