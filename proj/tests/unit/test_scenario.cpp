#include <doctest.h>

#include <filesystem>
#include <string>

#include "fsde/cli/scenario.hpp"
#include "fsde/errors.hpp"
#include "test_support.hpp"

using namespace fsde;
using namespace fsde::cli;

namespace {

bool mentions(const LoadResult& r, const std::string& needle)
{
    for (const auto& d : r.diagnostics) {
        if (d.str().find(needle) != std::string::npos) return true;
    }
    return false;
}

constexpr const char* kMinimal = R"(
name: t
problem:
  coefficients: gbm
grid:
  n: 64
)";

}  // namespace

TEST_CASE("shipped configs are valid")
{
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(FSDE_CONFIG_DIR)) {
        CAPTURE(entry.path().string());
        const auto diags = validate_config(entry.path());
        for (const auto& d : diags) MESSAGE(d.str());
        CHECK(diags.empty());
        ++count;
    }
    CHECK(count >= 10);
}

TEST_CASE("minimal config and defaults")
{
    const auto r = parse_scenario(kMinimal);
    REQUIRE(r.ok());
    const Scenario& s = *r.scenario;
    CHECK(s.name == "t");
    CHECK_FALSE(s.command);
    CHECK(s.steps == 64);
    CHECK(s.grid().steps() == 64);
    CHECK(s.problem.hurst.value() == 0.75);
    CHECK(s.coefficients.at("family") == "gbm");
    CHECK(s.mc_budget == 2000);
}

TEST_CASE("overrides replace config values")
{
    const auto r = parse_scenario(kMinimal, Overrides{128, 9, 0.3});
    REQUIRE(r.ok());
    CHECK(r.scenario->steps == 128);
    CHECK(r.scenario->noise_seed == 9);
    CHECK(*r.scenario->alpha == 0.3);
}

TEST_CASE("hurst outside (1/2,1) is reported")
{
    const auto r = parse_scenario("name: t\nproblem:\n  coefficients: gbm\n  hurst: 0.4\n");
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "H must lie in (1/2,1), got 0.4"));
}

TEST_CASE("alpha below 1-H is reported")
{
    const auto r = parse_scenario("name: t\nproblem:\n  coefficients: gbm\nalpha: 0.2\n");
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "alpha must exceed 1-H = 0.25, got 0.2"));
}

TEST_CASE("every problem is collected")
{
    const auto r = parse_scenario(R"(
name: t
colour: red
problem:
  coefficients: nosuch
  horizon: -1
grid:
  n: -4
mc_budget: many
)");
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics.size() >= 4);
    CHECK(mentions(r, "colour"));
    CHECK(mentions(r, "nosuch"));
    CHECK(mentions(r, "horizon"));
    CHECK(mentions(r, "mc_budget"));
}

TEST_CASE("malformed yaml is a diagnostic")
{
    const auto r = parse_scenario("name: [unclosed\n");
    CHECK_FALSE(r.ok());
}

TEST_CASE("explicit nodes")
{
    const auto ok = parse_scenario("name: t\nproblem:\n  coefficients: gbm\ngrid:\n  nodes: [0, 0.1, 0.5, 1]\n");
    REQUIRE(ok.ok());
    CHECK(ok.scenario->grid().steps() == 3);
    const auto bad = parse_scenario("name: t\nproblem:\n  coefficients: gbm\ngrid:\n  nodes: [0, 0.5, 0.4, 1]\n");
    CHECK_FALSE(bad.ok());
    const auto end = parse_scenario("name: t\nproblem:\n  coefficients: gbm\ngrid:\n  nodes: [0, 0.5]\n");
    CHECK_FALSE(end.ok());
}

TEST_CASE("command-specific checks")
{
    auto r = parse_scenario(kMinimal);
    REQUIRE(r.ok());
    Scenario s = *r.scenario;
    CHECK_FALSE(check_command(s, Command::hoelder).empty());
    s = *r.scenario;
    CHECK(check_command(s, Command::converge).empty());
    REQUIRE(s.converge.oracle);
    CHECK(*s.converge.oracle == sde::OracleKind::ito_gbm);

    auto lin = parse_scenario("name: t\ncommand: solve\nproblem:\n  coefficients: linear\n");
    REQUIRE(lin.ok());
    s = *lin.scenario;
    CHECK_FALSE(check_command(s, Command::converge).empty());
    s = *lin.scenario;
    CHECK_FALSE(check_command(s, Command::audit).empty());
    s = *lin.scenario;
    CHECK(check_command(s, Command::solve).empty());
}

TEST_CASE("command names")
{
    CHECK(command_from_string("gen-noise") == Command::gen_noise);
    CHECK_FALSE(command_from_string("gen_noise"));
    CHECK(to_string(Command::uniqueness) == "uniqueness");
}

TEST_CASE("missing file is an io error")
{
    CHECK_THROWS_AS(load_scenario("/nonexistent/dir/x.yaml"), IoError);
}
