#include <doctest.h>

#include <cmath>
#include <memory>

#include "fsde/errors.hpp"
#include "fsde/euler.hpp"
#include "fsde/noise.hpp"
#include "fsde/oracle.hpp"
#include "fsde/registry.hpp"
#include "test_support.hpp"

using namespace fsde;
using namespace fsde::sde;

namespace {

CoefficientSet quadratic_drift()
{
    CoefficientSet c;
    c.family = "quadratic";
    c.b = [](double, const Vector& x) -> Vector { return x.array().square().matrix(); };
    c.sigma_w = [](double, const Vector&) { return DenseMatrix::Zero(1, 1); };
    c.sigma_h = [](double, const Vector&) { return DenseMatrix::Zero(1, 1); };
    c.constants.L1 = 1.0;
    c.constants.L2 = 1.0;
    return c;
}

SDEProblem problem_for(CoefficientSet c, double x0, double horizon = 1.0)
{
    SDEProblem p{std::move(c), Vector::Constant(1, x0), horizon, HurstParameter(0.75)};
    p.validate();
    return p;
}

}  // namespace

TEST_CASE("registry lookups")
{
    const auto& reg = coefficient_registry();
    CHECK(reg.contains("linear"));
    CHECK_FALSE(reg.contains("quadratic"));
    CHECK(reg.families().size() == 9);
    CHECK_THROWS_AS((void)reg.make("quadratic"), LookupError);
    CHECK_THROWS_AS((void)reg.make("gbm", {{"sigmaa", 1.0}}), ParameterError);
    CHECK_THROWS_AS((void)reg.make("gbm", {{"sigma", "big"}}), ParameterError);
    CHECK_THROWS_AS((void)reg.parse("gbm(sigma=1"), ParameterError);
    CHECK_THROWS_AS((void)reg.parse("gbm(sigma)"), ParameterError);
    CHECK_THROWS_AS((void)reg.parse("gbm(sigma=x)"), ParameterError);
    CHECK_THROWS_AS((void)reg.parse("linear(d=1.5)"), ParameterError);
    CHECK_THROWS_AS((void)reg.from_json({{"params", {}}}), ParameterError);

    const auto lin = reg.parse("linear(d=3, a=0.2)");
    CHECK(lin.d == 3);
    CHECK(lin.m == 3);
    CHECK(lin.params.at("a") == 0.2);
}

TEST_CASE("coefficient json round trip")
{
    const auto& reg = coefficient_registry();
    const auto a = reg.parse("affine(b0=0.5, b1=-1, w0=0.2, h0=0.1, h1=0.3)");
    const auto b = reg.from_json(a.to_json());
    CHECK(b.family == "affine");
    CHECK(b.params == a.params);
    const Vector x = Vector::Constant(1, 0.7);
    CHECK(b.b(0.3, x) == a.b(0.3, x));
    CHECK(b.sigma_h(0.3, x) == a.sigma_h(0.3, x));
    const auto c = DeclaredConstants::from_json(a.constants.to_json());
    CHECK(c.L5 == a.constants.L5);
    CHECK(c.beta == a.constants.beta);
}

TEST_CASE("assumption validators")
{
    const auto& reg = coefficient_registry();
    for (const auto& fam : reg.families()) {
        CAPTURE(fam.name);
        CHECK(validate_assumptions(reg.make(fam.name), 400, 1).passed());
    }
    const auto report = validate_assumptions(quadratic_drift(), 400, 1);
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.check("Hb.lipschitz").passed);
    CHECK(report.check("Hb.lipschitz").worst_ratio > 1.0);
    CHECK(report.check("HsigmaW.lipschitz").passed);
    CHECK(report.to_json().at("checks").size() == 8);
    CHECK_THROWS_AS((void)report.check("nope"), LookupError);
    CHECK_THROWS_AS(validate_assumptions(quadratic_drift(), 50, 1), ParameterError);

    CoefficientSet missing = quadratic_drift();
    missing.sigma_h = nullptr;
    CHECK_THROWS_AS(missing.validate(), ParameterError);
}

TEST_CASE("euler is exact for a pure drift")
{
    const auto& reg = coefficient_registry();
    const auto p = problem_for(reg.parse("drift_only(c0=1)"), 0.25);
    const auto grid = test::jittered_grid(1.0, 100, 5);
    const auto nb = noise::NoiseGenerator(grid, p.hurst, 1, 1)(0);
    const auto x = euler_path(p, nb);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(x(i) - (0.25 + grid[i])) <= 1e-14);
}

TEST_CASE("euler with unit W coefficient reproduces the brownian path")
{
    const auto& reg = coefficient_registry();
    const auto p = problem_for(reg.parse("affine(w0=1, h1=0)"), 2.0);
    const auto grid = TimeGrid::uniform(1.0, 128);
    const auto nb = noise::NoiseGenerator(grid, p.hurst, 1, 1)(9);
    const auto x = euler_path(p, nb);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(x(i) == doctest::Approx(2.0 + nb.bm(i)).epsilon(1e-12));
}

TEST_CASE("euler input checks")
{
    const auto& reg = coefficient_registry();
    const SDEProblem p{reg.parse("linear(d=2)"), Vector::Ones(1), 1.0, HurstParameter(0.75)};
    CHECK_THROWS_AS(p.validate(), ParameterError);
    SDEProblem bad_t{reg.make("gbm"), Vector::Ones(1), 0.0, HurstParameter(0.75)};
    CHECK_THROWS_AS(bad_t.validate(), ParameterError);

    const auto ok = problem_for(reg.make("gbm"), 1.0);
    const auto grid = TimeGrid::uniform(1.0, 16);
    const auto nb = noise::NoiseGenerator(grid, ok.hurst, 1, 1)(0);
    CHECK_THROWS_AS(euler_path(ok, Vector::Ones(2), nb.fbm, nb.bm), ParameterError);
    const auto other = noise::NoiseGenerator(TimeGrid::uniform(1.0, 8), ok.hurst, 1, 1)(0);
    CHECK_THROWS_AS(euler_path(ok, Vector::Ones(1), nb.fbm, other.bm), DomainError);
    CHECK_THROWS_AS(euler_solve(nullptr, grid, nb), ParameterError);
    const auto run = euler_solve(std::make_shared<const SDEProblem>(ok), grid, nb);
    CHECK(run.path.size() == 17);
}

TEST_CASE("euler reports blow-up")
{
    const auto p = problem_for(quadratic_drift(), 10.0);
    const auto grid = TimeGrid::uniform(1.0, 16);
    const auto nb = noise::NoiseGenerator(grid, p.hurst, 1, 1)(0);
    try {
        (void)euler_path(p, nb);
        FAIL("expected blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.node() > 0);
        CHECK(e.node() <= 16);
        CHECK(e.time() == doctest::Approx(grid[e.node()]));
    }
}

TEST_CASE("initial state sampling")
{
    const Vector mean = Vector::Constant(2, 1.5);
    CHECK(sample_initial_state(mean, 0.0, 3) == mean);
    const Vector a = sample_initial_state(mean, 0.5, 3);
    CHECK(a == sample_initial_state(mean, 0.5, 3));
    CHECK(a != sample_initial_state(mean, 0.5, 4));
}

TEST_CASE("closed-form oracles")
{
    CHECK(oracle_kind_from_string("ito_gbm") == OracleKind::ito_gbm);
    CHECK(to_string(OracleKind::young_exponential) == "young_exponential");
    CHECK_THROWS_AS(oracle_kind_from_string("heston"), LookupError);
    CHECK(family_for(OracleKind::ito_gbm) == "gbm");

    const auto grid = TimeGrid::uniform(2.0, 64);
    const auto nb = noise::NoiseGenerator(grid, HurstParameter(0.75), 1, 1)(4);

    OracleParams drift;
    drift.x0 = 0.5;
    drift.c0 = 1.0;
    drift.c1 = 2.0;
    drift.omega = 3.0;
    const auto d = closed_form_oracle(OracleKind::drift_only, drift, nb);
    CHECK(d(64) == doctest::Approx(0.5 + 2.0 + 2.0 * std::sin(6.0) / 3.0));

    OracleParams gbm;
    gbm.x0 = 1.3;
    gbm.sigma = 0.4;
    gbm.mu = 0.1;
    const auto g = closed_form_oracle(OracleKind::ito_gbm, gbm, nb);
    CHECK(g(32) == doctest::Approx(1.3 * std::exp((0.1 - 0.08) * 1.0 + 0.4 * nb.bm(32))));

    OracleParams young;
    young.scale = 0.7;
    const auto y = closed_form_oracle(OracleKind::young_exponential, young, nb);
    CHECK(y(10) == doctest::Approx(std::exp(0.7 * nb.fbm(10))));

    const auto mp = oracle_params_for(OracleKind::mixed_exponential, {{"sigma", 0.3}}, 2.0);
    CHECK(mp.sigma == 0.3);
    CHECK(mp.x0 == 2.0);
    const auto m = closed_form_oracle(OracleKind::mixed_exponential, mp, nb);
    CHECK(m(64) == doctest::Approx(2.0 * std::exp(0.3 * nb.bm(64) - 0.09 + nb.fbm(64))));
}
