#include "bettimc/harness.hpp"

#include "bettimc/errors.hpp"
#include "bettimc/io.hpp"
#include "bettimc/walk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>

namespace bettimc {

// =============================================================================
// Config
// =============================================================================

const char* to_string(RunMode mode) noexcept {
    switch (mode) {
    case RunMode::estimate: return "estimate";
    case RunMode::trace: return "trace";
    case RunMode::exact: return "exact";
    case RunMode::spectrum: return "spectrum";
    case RunMode::validate: return "validate";
    case RunMode::bench: return "bench";
    }
    return "unknown";
}

RunMode parse_run_mode(const std::string& s) {
    for (RunMode m : {RunMode::estimate, RunMode::trace, RunMode::exact, RunMode::spectrum, RunMode::validate,
                      RunMode::bench}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw InputError("unknown mode '" + s + "'");
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const BudgetError*>(&e)) return exit_code::budget_error;
    if (dynamic_cast<const OracleScaleError*>(&e)) return exit_code::oracle_scale_error;
    if (dynamic_cast<const InputError*>(&e)) return exit_code::parse_error;
    return exit_code::failure;
}

unsigned default_workers() {
    if (const char* env = std::getenv("BETTIMC_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 4096) {
            return static_cast<unsigned>(v);
        }
    }
    return 1;
}

namespace {

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

} // namespace

void RunConfig::validate() const {
    if (k < 0) throw InputError("--k must be nonnegative");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("--epsilon must lie in (0, 1)");
    if (z < 0) throw InputError("--z must be nonnegative");
    if (!(delta > 0.0)) throw InputError("--delta must be positive");
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) throw InputError("--failure-prob must lie in (0, 1)");
    if (workers < 1) throw InputError("--workers must be at least 1");
    if (max_budget < 1) throw InputError("--max-budget must be at least 1");
    if (gamma != "auto") {
        auto g = parse_number(gamma);
        if (!g || !(*g > 0.0 && *g <= 1.0)) throw InputError("--gamma must be 'auto' or a number in (0, 1]");
    }
    if (lambda_hat != "auto" && lambda_hat != "n") {
        auto l = parse_number(lambda_hat);
        if (!l || !(*l > 0.0)) throw InputError("--lambda-hat must be 'auto', 'n' or a positive number");
    }
}

nlohmann::json to_json(const RunConfig& c) {
    return {{"input_path", c.input_path},
            {"mode", to_string(c.mode)},
            {"k", c.k},
            {"epsilon", c.epsilon},
            {"gamma", c.gamma},
            {"lambda_hat", c.lambda_hat},
            {"z", c.z},
            {"delta", c.delta},
            {"failure_prob", c.failure_prob},
            {"seed", c.seed},
            {"workers", c.workers},
            {"max_budget", c.max_budget},
            {"strict_budget", c.strict_budget},
            {"timing", c.timing},
            {"format", c.format == OutputFormat::json ? "json" : "text"}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.input_path = j.at("input_path").get<std::string>();
    c.mode = parse_run_mode(j.at("mode").get<std::string>());
    c.k = j.at("k").get<int>();
    c.epsilon = j.at("epsilon").get<double>();
    c.gamma = j.at("gamma").get<std::string>();
    c.lambda_hat = j.at("lambda_hat").get<std::string>();
    c.z = j.at("z").get<int>();
    c.delta = j.at("delta").get<double>();
    c.failure_prob = j.at("failure_prob").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.workers = j.at("workers").get<unsigned>();
    c.max_budget = j.at("max_budget").get<std::uint64_t>();
    c.strict_budget = j.at("strict_budget").get<bool>();
    c.timing = j.value("timing", false);
    c.format = j.at("format").get<std::string>() == "text" ? OutputFormat::text : OutputFormat::json;
    return c;
}

// =============================================================================
// Report
// =============================================================================

namespace {

bool wants_timing(const RunReport& r) {
    return r.config.is_object() && r.config.value("timing", false);
}

} // namespace

nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j = {{"config", r.config}, {"mode", r.mode}, {"result", r.result}};
    if (wants_timing(r)) {
        j["wall_time"] = r.wall_time;
    }
    j["samples_used"] = r.samples_used;
    j["warnings"] = r.warnings;
    j["ok"] = r.ok;
    return j;
}

RunReport run_report_from_json(const nlohmann::json& j) {
    RunReport r;
    r.config = j.at("config");
    r.mode = j.at("mode").get<std::string>();
    r.result = j.at("result");
    r.wall_time = j.value("wall_time", 0.0);
    r.samples_used = j.at("samples_used").get<std::uint64_t>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.ok = j.at("ok").get<bool>();
    return r;
}

std::string render_json(const RunReport& report) {
    return to_json(report).dump(2) + "\n";
}

namespace {

void render_value(std::ostringstream& os, const std::string& prefix, const nlohmann::json& v) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            render_value(os, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
        }
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            render_value(os, prefix + "[" + std::to_string(i) + "]", v[i]);
        }
    } else {
        os << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
}

} // namespace

std::string render_text(const RunReport& report) {
    std::ostringstream os;
    os << "mode: " << report.mode << '\n';
    render_value(os, "", report.result);
    if (!report.result.contains("samples_used")) {
        os << "samples_used: " << report.samples_used << '\n';
    }
    if (wants_timing(report)) {
        os << "wall_time: " << report.wall_time << " s\n";
    }
    for (const auto& w : report.warnings) {
        os << "warning: " << w << '\n';
    }
    return os.str();
}

// =============================================================================
// Validation checks
// =============================================================================

nlohmann::json to_json(const CheckResult& c) {
    return {{"name", c.name},         {"k", c.k},
            {"passed", c.passed},     {"checked", c.checked},
            {"violations", c.violations}, {"detail", c.detail}};
}

namespace {

struct Tally {
    CheckResult result;
    Tally(std::string name, int k) { result.name = std::move(name); result.k = k; }
    void record(bool ok, const std::string& what = {}) {
        ++result.checked;
        if (!ok) {
            ++result.violations;
            result.passed = false;
            if (result.detail.empty()) result.detail = what;
        }
    }
};

bool oracle_scale(const Complex& c, int k) {
    const std::size_t dk = c.face_count(k);
    if (dk == 0 || dk > spectrum_face_limit) return false;
    const std::size_t up = c.face_count(k + 1);
    const std::size_t down = k >= 1 ? c.face_count(k - 1) : 0;
    return up * dk <= dense_entry_limit && down * dk <= dense_entry_limit;
}

} // namespace

std::vector<CheckResult> validate_structure(const Complex& c, int k, std::optional<double> lambda_hat) {
    const auto& faces = c.enumerate_k_faces(k);
    if (faces.empty()) {
        throw EmptyDimensionError("complex has no " + std::to_string(k) + "-faces");
    }
    const int n = c.vertex_count();
    const bool dense = oracle_scale(c, k);

    std::optional<LaplacianParts> parts;
    std::optional<SpectrumReport> spectrum;
    if (dense) {
        parts = dense_laplacian_parts(c, k);
        spectrum = spectrum_of(parts->total().cast<double>());
    }
    double lh = static_cast<double>(n);
    if (lambda_hat) {
        lh = *lambda_hat;
    } else if (spectrum && spectrum->lambda_max > spectrum->zero_threshold) {
        lh = spectrum->lambda_max;
    }
    const SpectralParams params{lh, 1.0};

    std::vector<LaplacianRow> rows;
    rows.reserve(faces.size());
    std::unordered_map<Face, std::size_t> where;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        rows.push_back(laplacian_row(c, faces[i], params));
        where.emplace(faces[i], i);
    }

    std::vector<CheckResult> out;
    const double tol = 1e-9;

    Tally diag("diagonal_formula", k), diag_n("diagonal_le_n", k), sparse("general_sparsity", k),
        sym("row_symmetry", k);
    for (const auto& row : rows) {
        const int expected = row.up_degree + (k >= 1 ? k + 1 : 0);
        diag.record(row.diagonal == expected && row.up_degree == c.up_degree(row.base),
                    "diagonal mismatch at " + row.base.to_string());
        diag_n.record(row.diagonal <= n, "diagonal above n at " + row.base.to_string());
        sparse.record(row.off_diagonal.size() <= static_cast<std::size_t>((n - k - 1) * (k + 1)),
                      "too many off-diagonal entries at " + row.base.to_string());
        for (const auto& e : row.off_diagonal) {
            const auto it = where.find(e.neighbor);
            bool ok = false;
            if (it != where.end()) {
                for (const auto& back : rows[it->second].off_diagonal) {
                    if (back.neighbor == row.base) ok = back.value() == e.value();
                }
            }
            sym.record(ok, "asymmetric entry " + row.base.to_string() + " / " + e.neighbor.to_string());
        }
    }
    out.push_back(diag.result);
    out.push_back(diag_n.result);
    out.push_back(sparse.result);
    out.push_back(sym.result);

    if (c.is_clique()) {
        if (k >= 1) {
            Tally nnz("clique_row_nonzeros", k), outside("clique_one_neighbour_per_outside_vertex", k);
            for (const auto& row : rows) {
                const std::size_t bound = static_cast<std::size_t>(n - k - row.up_degree);
                nnz.record(row.off_diagonal.size() + 1 <= bound, "row nonzeros above n-k-d_up at " + row.base.to_string());
                std::map<Vertex, int> per_vertex;
                for (const auto& e : row.off_diagonal) {
                    for (Vertex v : e.neighbor) {
                        if (!row.base.contains(v)) ++per_vertex[v];
                    }
                }
                bool ok = true;
                for (auto [v, count] : per_vertex) ok = ok && count <= 1;
                outside.record(ok, "outside vertex reused at " + row.base.to_string());
            }
            out.push_back(nnz.result);
            out.push_back(outside.result);
        }
        Tally norm("clique_h_norm_bound", k);
        for (const auto& row : rows) {
            norm.record(row.h_column_norm <= 2.0 * n / lh + tol, "column norm above 2n/lambda_hat at " + row.base.to_string());
        }
        norm.result.detail += (norm.result.detail.empty() ? "" : "; ") + std::string("lambda_hat = ") + std::to_string(lh);
        out.push_back(norm.result);
    }

    if (dense) {
        const IntMatrix total = parts->total();
        if (faces.size() <= 200) {
            Tally eq("dense_row_equivalence", k);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                std::vector<int> sparse_row(faces.size(), 0);
                sparse_row[i] = static_cast<int>(rows[i].diagonal);
                for (const auto& e : rows[i].off_diagonal) {
                    sparse_row[where.at(e.neighbor)] = static_cast<int>(e.value());
                }
                bool ok = true;
                for (std::size_t j = 0; j < faces.size(); ++j) {
                    ok = ok && sparse_row[j] == total(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                }
                eq.record(ok, "sparse row differs from dense Laplacian at " + faces[i].to_string());
            }
            out.push_back(eq.result);
        }
        if (k >= 1) {
            Tally bounds("lambda_max_bounds", k);
            int delta_k = 0;
            for (const auto& row : rows) delta_k = std::max(delta_k, row.up_degree);
            bounds.record(delta_k + k + 1 <= spectrum->lambda_max + 1e-9 && spectrum->lambda_max <= n + 1e-9,
                          "lambda_max = " + std::to_string(spectrum->lambda_max) + " outside [delta_k + k + 1, n]");
            out.push_back(bounds.result);
        }
        Tally psd("laplacian_psd", k);
        psd.record(spectrum->eigenvalues.front() >= -1e-9 * std::max(spectrum->lambda_max, 1.0),
                   "negative eigenvalue " + std::to_string(spectrum->eigenvalues.front()));
        out.push_back(psd.result);

        Tally split("lambda_max_up_down_split", k);
        const double up_max = spectrum_of(parts->up.cast<double>()).lambda_max;
        const double down_max = spectrum_of(parts->down.cast<double>()).lambda_max;
        split.record(std::abs(std::max(up_max, down_max) - spectrum->lambda_max) <= 1e-8,
                     "max(lambda_up, lambda_down) differs from lambda_max");
        out.push_back(split.result);

        Tally betti("betti_rank_matches_spectrum", k);
        const std::size_t b = exact_betti(c, k);
        betti.record(b == spectrum->betti_spectral,
                     "rank betti " + std::to_string(b) + " vs spectral " + std::to_string(spectrum->betti_spectral));
        out.push_back(betti.result);
    }
    return out;
}

// =============================================================================
// Dispatch
// =============================================================================

namespace {

struct ResolvedParams {
    double lambda_hat = 0.0;
    std::string lambda_source;
    double gamma = 1.0;
    std::string gamma_source;
};

ResolvedParams resolve_params(const RunConfig& cfg, const Complex& c, bool need_gamma,
                              std::vector<std::string>& warnings) {
    ResolvedParams out;
    const int n = c.vertex_count();
    std::optional<SpectrumReport> spectrum;
    auto get_spectrum = [&]() -> const std::optional<SpectrumReport>& {
        if (!spectrum && oracle_scale(c, cfg.k)) {
            spectrum = exact_spectrum(c, cfg.k);
        }
        return spectrum;
    };

    if (cfg.lambda_hat == "n") {
        out.lambda_hat = n;
        out.lambda_source = "n";
    } else if (cfg.lambda_hat == "auto") {
        const auto& s = get_spectrum();
        if (s && s->lambda_max > s->zero_threshold) {
            out.lambda_hat = s->lambda_max;
            out.lambda_source = "oracle lambda_max";
        } else {
            out.lambda_hat = n;
            out.lambda_source = "n";
            warnings.push_back(s ? "Laplacian is zero; lambda_hat set to n"
                                 : "instance beyond oracle scale; lambda_hat set to n");
        }
    } else {
        out.lambda_hat = *parse_number(cfg.lambda_hat);
        out.lambda_source = "user";
    }

    if (!need_gamma) {
        return out;
    }
    if (cfg.gamma == "auto") {
        const auto& s = get_spectrum();
        if (!s) {
            throw OracleScaleError("--gamma auto needs the dense spectrum, but d_k = " +
                                   std::to_string(c.face_count(cfg.k)) + " exceeds the oracle limit; pass --gamma");
        }
        out.gamma = s->has_gap ? std::min(1.0, s->gap / out.lambda_hat) : 1.0;
        out.gamma_source = s->has_gap ? "oracle gap / lambda_hat" : "no nonzero eigenvalue";
    } else {
        out.gamma = *parse_number(cfg.gamma);
        out.gamma_source = "user";
    }
    return out;
}

void add_params(nlohmann::json& j, const ResolvedParams& p, bool with_gamma) {
    j["lambda_hat"] = p.lambda_hat;
    j["lambda_hat_source"] = p.lambda_source;
    if (with_gamma) {
        j["gamma"] = p.gamma;
        j["gamma_source"] = p.gamma_source;
    }
}

// Sample count for a single trace estimate under the configured budget policy.
std::uint64_t trace_samples(const RunConfig& cfg, double B, double& required, bool& capped) {
    required = hoeffding_count(B, cfg.z, cfg.delta, cfg.failure_prob);
    capped = !(required <= static_cast<double>(cfg.max_budget));
    if (capped) {
        if (cfg.strict_budget) {
            std::ostringstream msg;
            msg << "trace at z = " << cfg.z << " needs " << required << " samples for --delta " << cfg.delta
                << ", above --max-budget " << cfg.max_budget << "; raise --delta or --max-budget";
            throw BudgetError(msg.str());
        }
        return cfg.max_budget;
    }
    return hoeffding_budget(B, cfg.z, cfg.delta, cfg.failure_prob).p;
}

} // namespace

RunReport run(const RunConfig& cfg, const Complex& c, const std::vector<std::string>& input_warnings) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = to_json(cfg);
    report.mode = to_string(cfg.mode);
    report.warnings = input_warnings;

    const std::size_t dk = c.face_count(cfg.k);
    nlohmann::json result = {{"k", cfg.k}, {"d_k", dk}, {"n", c.vertex_count()},
                             {"complex_kind", c.is_clique() ? "clique" : "general"}};
    EstimatorOptions est_opts;
    est_opts.workers = cfg.workers;

    switch (cfg.mode) {
    case RunMode::estimate: {
        const ComplexHandle handle(c, cfg.k);
        const auto p = resolve_params(cfg, c, true, report.warnings);
        BettiOptions opts;
        opts.failure_prob = cfg.failure_prob;
        opts.max_budget = cfg.max_budget;
        opts.policy = cfg.strict_budget ? BudgetPolicy::strict : BudgetPolicy::cap;
        opts.estimator = est_opts;
        const auto est = estimate_betti(handle, SpectralParams{p.lambda_hat, p.gamma}, cfg.epsilon,
                                        RandomStream(cfg.seed), opts);
        result.update(to_json(est));
        add_params(result, p, true);
        report.samples_used = est.samples_used;
        report.warnings.insert(report.warnings.end(), est.warnings.begin(), est.warnings.end());
        break;
    }
    case RunMode::trace: {
        const ComplexHandle handle(c, cfg.k);
        const auto p = resolve_params(cfg, c, false, report.warnings);
        const SpectralParams params{p.lambda_hat, 1.0};
        const double B = column_norm_bound(handle, params);
        double required = 0.0;
        bool capped = false;
        const std::uint64_t samples = trace_samples(cfg, B, required, capped);
        const auto est = estimate_trace_power(handle, cfg.z, params, samples, RandomStream(cfg.seed), est_opts, B);
        result.update(to_json(est));
        result["delta"] = cfg.delta;
        result["hoeffding_required"] = required;
        result["capped"] = capped;
        add_params(result, p, false);
        report.samples_used = est.sample_count;
        if (capped) {
            report.warnings.push_back("Hoeffding count exceeds --max-budget; ran " + std::to_string(samples) +
                                      " samples without the delta guarantee");
        }
        break;
    }
    case RunMode::exact: {
        if (dk == 0) {
            throw EmptyDimensionError("complex has no " + std::to_string(cfg.k) + "-faces");
        }
        const std::size_t b = exact_betti(c, cfg.k);
        result["betti"] = b;
        result["normalized_betti"] = static_cast<double>(b) / static_cast<double>(dk);
        break;
    }
    case RunMode::spectrum: {
        const auto s = exact_spectrum(c, cfg.k);
        result["spectrum"] = to_json(s);
        result["normalized_betti"] = static_cast<double>(s.betti_spectral) / static_cast<double>(dk);
        break;
    }
    case RunMode::validate: {
        std::optional<double> lh;
        if (cfg.lambda_hat != "auto") {
            lh = cfg.lambda_hat == "n" ? static_cast<double>(c.vertex_count()) : *parse_number(cfg.lambda_hat);
        }
        const auto checks = validate_structure(c, cfg.k, lh);
        nlohmann::json list = nlohmann::json::array();
        bool all = true;
        for (const auto& ch : checks) {
            list.push_back(to_json(ch));
            all = all && ch.passed;
        }
        result["checks"] = std::move(list);
        result["all_passed"] = all;
        report.ok = all;
        break;
    }
    case RunMode::bench: {
        using clock = std::chrono::steady_clock;
        const ComplexHandle handle(c, cfg.k);
        const auto p = resolve_params(cfg, c, false, report.warnings);
        const SpectralParams params{p.lambda_hat, 1.0};
        const double B = column_norm_bound(handle, params);
        double required = 0.0;
        bool capped = false;
        const std::uint64_t samples = trace_samples(cfg, B, required, capped);

        const auto t0 = clock::now();
        const auto est = estimate_trace_power(handle, cfg.z, params, samples, RandomStream(cfg.seed), est_opts, B);
        const auto t1 = clock::now();
        result["estimator"] = to_json(est);
        result["estimator_seconds"] = std::chrono::duration<double>(t1 - t0).count();
        result["samples_per_second"] =
            static_cast<double>(samples) / std::max(1e-12, std::chrono::duration<double>(t1 - t0).count());
        report.samples_used = samples;
        if (oracle_scale(c, cfg.k)) {
            const auto t2 = clock::now();
            const double exact = exact_trace_power(c, cfg.k, cfg.z, p.lambda_hat);
            const auto t3 = clock::now();
            result["oracle_trace"] = exact;
            result["oracle_seconds"] = std::chrono::duration<double>(t3 - t2).count();
            result["abs_error"] = std::abs(exact - est.mean);
        } else {
            report.warnings.push_back("instance beyond oracle scale; oracle timing skipped");
        }
        add_params(result, p, false);
        break;
    }
    }

    report.result = std::move(result);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

RunReport run(const RunConfig& cfg) {
    cfg.validate();
    auto parsed = parse_input(cfg.input_path);
    RunReport report = run(cfg, parsed.complex, parsed.warnings);
    if (!parsed.generator.empty()) {
        report.result["generator"] = parsed.generator;
    }
    return report;
}

} // namespace bettimc
