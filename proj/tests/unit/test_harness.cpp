#include "bettimc/errors.hpp"
#include "bettimc/harness.hpp"
#include "bettimc/oracle.hpp"

#include "instances.hpp"

#include <gtest/gtest.h>

using namespace bettimc;
using namespace bettimc::testing;

namespace {

RunConfig config(RunMode mode, int k) {
    RunConfig cfg;
    cfg.mode = mode;
    cfg.k = k;
    cfg.max_budget = 50000;
    return cfg;
}

} // namespace

TEST(Harness, EstimateHollowTriangle) {
    const auto report = run(config(RunMode::estimate, 1), hollow_triangle());
    EXPECT_NEAR(report.result.at("nu_tilde").get<double>(), 1.0 / 3.0, 0.25);
    EXPECT_EQ(report.result.at("d_k").get<int>(), 3);
    EXPECT_NEAR(report.result.at("lambda_hat").get<double>(), 3.0, 1e-9);
    EXPECT_GT(report.samples_used, 0u);
    EXPECT_TRUE(report.ok);
}

TEST(Harness, ExactAndSpectrumModes) {
    const auto exact = run(config(RunMode::exact, 2), octahedron());
    EXPECT_EQ(exact.result.at("betti").get<int>(), 1);
    EXPECT_DOUBLE_EQ(exact.result.at("normalized_betti").get<double>(), 0.125);
    const auto spec = run(config(RunMode::spectrum, 1), cycle_graph(6));
    EXPECT_EQ(spec.result.at("spectrum").at("betti_spectral").get<int>(), 1);
}

TEST(Harness, TraceAtZeroIsOne) {
    auto cfg = config(RunMode::trace, 1);
    cfg.z = 0;
    const auto report = run(cfg, complete_graph(5));
    EXPECT_EQ(report.result.at("mean").get<double>(), 1.0);
    EXPECT_EQ(report.result.at("std_error").get<double>(), 0.0);
}

TEST(Harness, TraceStrictBudget) {
    auto cfg = config(RunMode::trace, 1);
    cfg.z = 4;
    cfg.delta = 1e-4;
    cfg.strict_budget = true;
    EXPECT_THROW(run(cfg, cycle_graph(6)), BudgetError);
    cfg.strict_budget = false;
    const auto report = run(cfg, cycle_graph(6));
    EXPECT_TRUE(report.result.at("capped").get<bool>());
    EXPECT_FALSE(report.warnings.empty());
}

TEST(Harness, ValidatePassesOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        for (const Complex& c : {random_general(seed), random_clique(seed)}) {
            for (int k = 0; k <= c.dimension(); ++k) {
                const auto report = run(config(RunMode::validate, k), c);
                EXPECT_TRUE(report.ok) << report.result.dump();
            }
        }
    }
}

TEST(Harness, LambdaHatChoices) {
    auto cfg = config(RunMode::trace, 1);
    cfg.lambda_hat = "n";
    auto report = run(cfg, hollow_triangle());
    EXPECT_EQ(report.result.at("lambda_hat").get<double>(), 3.0);
    cfg.lambda_hat = "4.5";
    report = run(cfg, hollow_triangle());
    EXPECT_EQ(report.result.at("lambda_hat").get<double>(), 4.5);
}

TEST(Harness, AutoGammaBeyondOracleScale) {
    auto cfg = config(RunMode::estimate, 1);
    cfg.lambda_hat = "n";
    EXPECT_THROW(run(cfg, complete_graph(70)), OracleScaleError);
}

TEST(Harness, ConfigValidation) {
    RunConfig cfg;
    cfg.epsilon = 1.5;
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = RunConfig{};
    cfg.gamma = "abc";
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = RunConfig{};
    cfg.lambda_hat = "-1";
    EXPECT_THROW(cfg.validate(), InputError);
    cfg = RunConfig{};
    cfg.workers = 0;
    EXPECT_THROW(cfg.validate(), InputError);
    EXPECT_THROW(run(config(RunMode::estimate, 2), hollow_triangle()), EmptyDimensionError);
}

TEST(Harness, ReportRoundTrip) {
    const auto report = run(config(RunMode::estimate, 1), cycle_graph(6));
    const auto back = run_report_from_json(to_json(report));
    EXPECT_EQ(render_json(back), render_json(report));
    const auto cfg = run_config_from_json(report.config);
    EXPECT_EQ(to_json(cfg), report.config);
}

TEST(Harness, ReproducibleOutput) {
    auto cfg = config(RunMode::estimate, 1);
    cfg.seed = 1234;
    const auto a = render_json(run(cfg, cycle_graph(6)));
    const auto b = render_json(run(cfg, cycle_graph(6)));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("wall_time"), std::string::npos);
    cfg.seed = 1235;
    EXPECT_NE(render_json(run(cfg, cycle_graph(6))), a);
}

TEST(Harness, TimingIsOptIn) {
    auto cfg = config(RunMode::exact, 1);
    cfg.timing = true;
    const auto report = run(cfg, hollow_triangle());
    EXPECT_NE(render_json(report).find("wall_time"), std::string::npos);
    EXPECT_NE(render_text(report).find("wall_time"), std::string::npos);
}

TEST(Harness, ExitCodes) {
    EXPECT_EQ(exit_code_for(ParseError("x", 3)), exit_code::parse_error);
    EXPECT_EQ(exit_code_for(EmptyDimensionError("x")), exit_code::parse_error);
    EXPECT_EQ(exit_code_for(BudgetError("x")), exit_code::budget_error);
    EXPECT_EQ(exit_code_for(OracleScaleError("x")), exit_code::oracle_scale_error);
    EXPECT_EQ(exit_code_for(NumericalError("x")), exit_code::failure);
}

TEST(Harness, RunModeNames) {
    for (RunMode m : {RunMode::estimate, RunMode::trace, RunMode::exact, RunMode::spectrum, RunMode::validate,
                      RunMode::bench}) {
        EXPECT_EQ(parse_run_mode(to_string(m)), m);
    }
    EXPECT_THROW(parse_run_mode("guess"), InputError);
}

TEST(Harness, TextRendering) {
    const auto text = render_text(run(config(RunMode::exact, 1), hollow_triangle()));
    EXPECT_NE(text.find("betti: 1"), std::string::npos);
}

TEST(Harness, TriangleGraphHasNoOneCycles) {
    auto cfg = config(RunMode::estimate, 1);
    cfg.epsilon = 0.2;
    cfg.gamma = "1";
    const auto report = run(cfg, complete_graph(3));
    EXPECT_NEAR(report.result.at("nu_tilde").get<double>(), 0.0, 0.2);
}

TEST(Harness, TraceMatchesOracleOnK4) {
    auto cfg = config(RunMode::trace, 1);
    cfg.z = 3;
    cfg.delta = 0.05;
    cfg.max_budget = 10'000'000;
    const Complex c = complete_graph(4);
    const auto report = run(cfg, c);
    const double lambda = report.result.at("lambda_hat").get<double>();
    EXPECT_FALSE(report.result.at("capped").get<bool>());
    EXPECT_NEAR(report.result.at("mean").get<double>(), exact_trace_power(c, 1, 3, lambda), 0.05);
}
