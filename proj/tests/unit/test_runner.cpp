#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "fsde/cli/runner.hpp"
#include "fsde/csv.hpp"
#include "fsde/errors.hpp"
#include "fsde/registry.hpp"
#include "test_support.hpp"

using namespace fsde;
using namespace fsde::cli;

namespace {

Scenario load(const std::string& file)
{
    auto r = load_scenario(std::filesystem::path(FSDE_CONFIG_DIR) / file);
    REQUIRE(r.ok());
    return *r.scenario;
}

}  // namespace

TEST_CASE("drift-only solve writes the exact solution")
{
    test::TempDir dir("solve");
    const auto out = run_scenario(load("solve_drift_only.yaml"), Command::solve, dir.path());
    CHECK(out.exit_code == kExitOk);
    std::istringstream in(test::read_file(dir.path() / "path.csv"));
    const SamplePath x = read_path_csv(in);
    CHECK(x.grid().steps() == 64);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(x(i) - x.grid()[i]) <= 1e-14);
    const auto manifest = nlohmann::json::parse(test::read_file(dir.path() / "manifest.json"));
    CHECK(manifest.at("exit_code") == 0);
    CHECK(manifest.at("command") == "solve");
    CHECK(manifest.contains("wall_time_seconds"));
}

TEST_CASE("identical-pair audit has zero left-hand sides")
{
    test::TempDir dir("ident");
    const auto out = run_scenario(load("audit_identical.yaml"), Command::audit, dir.path());
    CHECK(out.exit_code == kExitOk);
    std::istringstream lines(test::read_file(dir.path() / "reports.jsonl"));
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("lhs") == 0.0);
        CHECK(j.at("passed") == true);
        ++n;
    }
    CHECK(n >= 3);
}

TEST_CASE("a command the scenario cannot run is a validation error")
{
    test::TempDir dir("bad");
    const auto out = run_scenario(load("solve_drift_only.yaml"), Command::hoelder, dir.path());
    CHECK(out.exit_code == kExitValidation);
    CHECK(out.artifacts.empty());
}

TEST_CASE("a failing audit exits with the failure code")
{
    test::TempDir dir("fail");
    Scenario s = load("audit_estimates.yaml");
    s.audit.calibrate_a.clear();
    s.audit.calibrate_b.clear();
    s.audit.estimates = {"Fbf"};
    s.audit.caps = {{"Fbf", 1e-9}};
    s.audit.fbm_paths = 0;
    const auto out = run_scenario(s, Command::audit, dir.path());
    CHECK(out.exit_code == kExitFailed);
    CHECK(out.summary.find("FAILED") != std::string::npos);
}

TEST_CASE("library errors become failed runs")
{
    test::TempDir dir("err");
    Scenario s = load("solve_drift_only.yaml");
    s.problem.coeffs = sde::coefficient_registry().parse("gbm(mu=1e6, sigma=0)");
    s.problem.x0 = Vector::Ones(1);
    const auto out = run_scenario(s, Command::solve, dir.path());
    CHECK(out.exit_code == kExitFailed);
    CHECK(out.summary.find("FAILED:") != std::string::npos);
    CHECK(std::filesystem::exists(dir.path() / "manifest.json"));
}

TEST_CASE("batch mode")
{
    test::TempDir configs("batch-in");
    test::TempDir out("batch-out");
    test::write_text(configs.path() / "a.yaml", "name: a\ncommand: solve\nproblem:\n  coefficients: drift_only\n"
                                                "grid:\n  n: 8\n");
    test::write_text(configs.path() / "b.yaml", "name: a\ncommand: solve\nproblem:\n  coefficients: drift_only\n");
    test::write_text(configs.path() / "c.yaml", "name: c\nproblem:\n  coefficients: drift_only\n");
    test::write_text(configs.path() / "notes.txt", "ignored");
    const auto outcomes = run_batch(configs.path(), {}, out.path());
    REQUIRE(outcomes.size() == 3);
    CHECK(outcomes[0].exit_code == kExitOk);
    CHECK(outcomes[1].exit_code == kExitValidation);
    CHECK(outcomes[1].summary.find("duplicates a.yaml") != std::string::npos);
    CHECK(outcomes[2].exit_code == kExitValidation);
    CHECK(combined_exit_code(outcomes) == kExitValidation);
    CHECK(std::filesystem::exists(out.path() / "a" / "path.csv"));
    CHECK_THROWS_AS(run_batch(configs.path() / "nope", {}, out.path()), IoError);
}

TEST_CASE("output directory resolution")
{
    Scenario s = load("solve_drift_only.yaml");
    CHECK(output_directory(s, std::filesystem::path("x")) == std::filesystem::path("x"));
}
