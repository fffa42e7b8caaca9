#include <doctest.h>

#include <sstream>

#include "fiscomp/validation.hpp"

using namespace fiscomp;
using namespace fiscomp::validation;

TEST_CASE("symbolic suite passes") {
    const TestReport report = run_symbolic_suite();
    REQUIRE(report.entries.size() == 6);
    for (const auto& e : report.entries) {
        CAPTURE(e.id);
        CAPTURE(e.details);
        CHECK(e.passed);
    }
    CHECK(report.entries.front().id == "SYM-01");
    CHECK(report.entries.back().id == "SYM-06");
}

TEST_CASE("deterministic suite passes on the baseline") {
    const ModelParams baseline;
    const TestReport report = run_deterministic_suite(baseline);
    REQUIRE(report.entries.size() == 21);
    for (const auto& e : report.entries) {
        CAPTURE(e.id);
        CAPTURE(e.details);
        CHECK(e.passed);
    }
}

TEST_CASE("deterministic suite echoes the recovered adversarial values") {
    const ModelParams baseline;
    const TestReport report = run_deterministic_suite(baseline);
    auto details_of = [&](const std::string& id) {
        for (const auto& e : report.entries)
            if (e.id == id) return e.details;
        FAIL("missing id ", id);
        return std::string();
    };
    CHECK(details_of("DET-07") == "poor=6.2364; current=1.9481");
    CHECK(details_of("DET-10") == "4.54545455, 4.54545455, 4.54545455, 4.54545455");
    CHECK(details_of("DET-12") == "low open=6.5000; high open=2.8889");
    CHECK(details_of("DET-13") == "low penalty=6.6102; high penalty=2.6174");
    CHECK(details_of("DET-14") == "low risk=5.4167; high risk=2.5658");
    CHECK(details_of("DET-02") == "common=6.493506");
    CHECK(details_of("DET-16") == "small=2.025974; big=4.051948");
}

TEST_CASE("deterministic suite is drag-calibration independent") {
    // The drag coefficient is a closure calibration; every identity and
    // inequality in the suite must survive turning it off.
    ModelParams p;
    p.rho_drag = 0.0;
    const TestReport report = run_deterministic_suite(p);
    for (const auto& e : report.entries) {
        CAPTURE(e.id);
        CAPTURE(e.details);
        CHECK(e.passed);
    }
}

TEST_CASE("sensitivity suite passes and validates its grid") {
    const ModelParams baseline;
    const TestReport report = run_sensitivity_suite(baseline, 51);
    REQUIRE(report.entries.size() == 4);
    for (const auto& e : report.entries) {
        CAPTURE(e.id);
        CHECK(e.passed);
    }
    CHECK_THROWS_AS(run_sensitivity_suite(baseline, 5), ArgumentError);
}

TEST_CASE("monte carlo suite passes on a reduced run") {
    MonteCarloConfig cfg;
    cfg.n_draws = 300;
    cfg.stress_draws = 100;
    cfg.seed = 2024;
    const ModelParams baseline;
    MonteCarloSummary summary;
    std::vector<DrawRecord> records;
    const TestReport report = run_monte_carlo_suite(cfg, baseline, 1, &summary, &records);
    REQUIRE(report.entries.size() == 10);
    for (const auto& e : report.entries) {
        CAPTURE(e.id);
        CAPTURE(e.details);
        CHECK(e.passed);
    }
    CHECK(summary.n_draws == 300);
    CHECK(records.size() == 300);
}

TEST_CASE("sweep argument guards") {
    const ModelParams baseline;
    CHECK_THROWS_AS(run_sweep(baseline, SweepParameter::phi, 0.0, 1.0, 1), ArgumentError);
    CHECK_THROWS_AS(run_sweep(baseline, SweepParameter::phi, 1.0, 0.0, 10), ArgumentError);
    CHECK_THROWS_AS(parse_sweep_parameter("interest_rate"), ArgumentError);
    CHECK(parse_sweep_parameter("phi") == SweepParameter::phi);
    CHECK(parse_sweep_parameter("mu_I") == SweepParameter::mu_I);
    const auto pts = run_sweep(baseline, SweepParameter::m, 0.02, 0.55, 12);
    CHECK(pts.size() == 12);
    CHECK(pts.front().value == doctest::Approx(0.02));
    CHECK(pts.back().value == doctest::Approx(0.55));
}

TEST_CASE("sweep CSV layout") {
    const ModelParams baseline;
    const auto pts = run_sweep(baseline, SweepParameter::phi, 0.0, 1.0, 3);
    std::ostringstream out;
    write_sweep_csv(SweepParameter::phi, pts, out);
    const std::string text = out.str();
    CHECK(text.rfind("phi,investment_pv\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("report emitter") {
    TestReport report;
    report.add({"SYM-01", "Linear aggregation sufficiency", true, "Requires a_C=a_I=a_T."});
    report.add({"DET-01", "Same aggregate G gives different PV(Y)", false, "values differ"});

    SUBCASE("plain table") {
        const std::string text = emit_report(report, ReportFormat::plain_table);
        CHECK(text.find("SYM-01") != std::string::npos);
        CHECK(text.find("False") != std::string::npos);
        CHECK(text.find("Symbolic algebra and sufficiency") != std::string::npos);
        CHECK(text.find("Deterministic adversarial cases and identities") != std::string::npos);
        CHECK(text.find("Total") != std::string::npos);
    }
    SUBCASE("delimited") {
        const std::string text = emit_report(report, ReportFormat::delimited);
        CHECK(text.rfind("id,name,passed,details\n", 0) == 0);
        CHECK(text.find("SYM-01,\"Linear aggregation sufficiency\",true,") != std::string::npos);
        CHECK(text.find("total,,2,1\n") != std::string::npos);
    }
    SUBCASE("empty report rejected") {
        const TestReport empty;
        CHECK_THROWS_AS(emit_report(empty, ReportFormat::plain_table), ArgumentError);
    }
    SUBCASE("single-entry report renders") {
        TestReport one;
        one.add({"OUT-01", "Output ZIP package generated", true, "ok"});
        const std::string text = emit_report(one, ReportFormat::plain_table);
        CHECK(text.find("Replication package generation") != std::string::npos);
    }
    SUBCASE("duplicate ids rejected") {
        CHECK_THROWS_AS(report.add({"SYM-01", "again", true, ""}), InvalidParameterError);
    }
    SUBCASE("format names") {
        CHECK(parse_report_format("plain-table") == ReportFormat::plain_table);
        CHECK(parse_report_format("delimited") == ReportFormat::delimited);
        CHECK_THROWS_AS(parse_report_format("xml"), ArgumentError);
    }
}
