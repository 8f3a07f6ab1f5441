#pragma once

#include "bettimc/chebyshev.hpp"
#include "bettimc/complex.hpp"
#include "bettimc/laplacian.hpp"
#include "bettimc/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bettimc {

enum class RunMode { estimate, trace, exact, spectrum, validate, bench };
enum class OutputFormat { json, text };

const char* to_string(RunMode mode) noexcept;
RunMode parse_run_mode(const std::string& s);

/// Process exit codes used by the command-line tool.
namespace exit_code {
inline constexpr int success = 0;
inline constexpr int failure = 1;
inline constexpr int parse_error = 2;
inline constexpr int budget_error = 3;
inline constexpr int oracle_scale_error = 4;
} // namespace exit_code

/// Maps an in-flight exception to the exit code of the command-line tool.
int exit_code_for(const std::exception& e) noexcept;

/// Default worker count: $BETTIMC_WORKERS when set and positive, else 1.
unsigned default_workers();

struct RunConfig {
    std::string input_path;
    RunMode mode = RunMode::estimate;
    int k = 1;
    double epsilon = 0.25;
    std::string gamma = "auto";       ///< "auto" (oracle gap) or a number in (0, 1]
    std::string lambda_hat = "auto";  ///< "auto", "n" or a positive number
    int z = 1;
    double delta = 0.05;              ///< trace mode precision
    double failure_prob = 0.01;
    std::uint64_t seed = RandomStream::default_seed;
    unsigned workers = 1;
    std::uint64_t max_budget = 1'000'000;
    bool strict_budget = false;
    /// Include wall_time in rendered reports (it differs between otherwise identical runs).
    bool timing = false;
    OutputFormat format = OutputFormat::json;

    /// Throws InputError on out-of-range values.
    void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

struct RunReport {
    nlohmann::json config;
    std::string mode;
    nlohmann::json result;
    double wall_time = 0.0;
    std::uint64_t samples_used = 0;
    std::vector<std::string> warnings;
    bool ok = true;  ///< false when a validate check failed
};

nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& j);

/// JSON rendering with a fixed key order and indentation.
std::string render_json(const RunReport& report);
/// Human-readable rendering of the same structure.
std::string render_text(const RunReport& report);

/// Loads `config.input_path` and dispatches on the mode. Generator parameters found in the file are reported.
RunReport run(const RunConfig& config);
/// Same, on an already-parsed complex (input warnings are passed through).
RunReport run(const RunConfig& config, const Complex& complex, const std::vector<std::string>& input_warnings = {});

// -----------------------------------------------------------------------------
// Structural checks behind `validate`
// -----------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    int k = 0;
    bool passed = true;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::string detail;
};

/**
 * Per-row structure checks on the k-faces of `c`: diagonal formula, diagonal
 * <= n, general sparsity, row symmetry, and for clique complexes the per-row
 * nonzero bound, the one-neighbour-per-outside-vertex property and the
 * ||H||_1 <= 2n / lambda_hat bound. When the instance is oracle-scale the
 * eigenvalue bounds, dense-row equivalence and rank/spectrum agreement are
 * checked as well. `lambda_hat` is used for the norm bound; if absent, the
 * exact lambda_max is used when available, else n.
 */
std::vector<CheckResult> validate_structure(const Complex& c, int k, std::optional<double> lambda_hat = std::nullopt);

nlohmann::json to_json(const CheckResult& check);

} // namespace bettimc
