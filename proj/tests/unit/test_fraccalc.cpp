#include <doctest.h>

#include <cmath>

#include "fsde/errors.hpp"
#include "fsde/fraccalc.hpp"
#include "fsde/noise.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace fsde;
namespace oracle = fsde::test::oracle;
namespace fc = fsde::fraccalc;

namespace {
const TimeGrid kGrid = TimeGrid::uniform(1.0, 256);
}

TEST_CASE("riemann-liouville integrals")
{
    const auto one = test::constant_path(kGrid, 1.0);
    const auto id = test::identity_path(kGrid);
    CHECK(fc::rl_integral_left(one, FracOrder(0.5), 1.0) == doctest::Approx(oracle::kRlOneHalf).epsilon(1e-12));
    CHECK(fc::rl_integral_left(id, FracOrder(0.5), 1.0) == doctest::Approx(oracle::kRlIdHalf).epsilon(1e-12));
    CHECK(fc::rl_integral_right(one, FracOrder(0.5), 0.0, 1.0) == doctest::Approx(oracle::kRlOneHalf).epsilon(1e-12));
    const auto path = fc::rl_integral_left_path(one, FracOrder(0.3));
    CHECK(path(0) == 0.0);
    CHECK(path(128) == doctest::Approx(std::pow(0.5, 0.3) / std::tgamma(1.3)).epsilon(1e-12));
    const auto right = fc::rl_integral_right_path(one, FracOrder(0.3));
    CHECK(right(256) == 0.0);
    CHECK_THROWS_AS(fc::rl_integral_left(one, FracOrder(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(fc::rl_integral_left(one, FracOrder(0.5), 0.3), NodeError);
    CHECK_THROWS_AS(fc::rl_integral_right(one, FracOrder(0.5), 1.0, 1.0), DomainError);
}

TEST_CASE("weyl derivatives")
{
    const auto one = test::constant_path(kGrid, 1.0);
    const auto id = test::identity_path(kGrid);
    CHECK(fc::weyl_derivative_left(one, FracOrder(0.5), 1.0) == doctest::Approx(oracle::kWeylOneHalf).epsilon(1e-12));
    CHECK(fc::weyl_derivative_left(id, FracOrder(0.5), 1.0) == doctest::Approx(oracle::kWeylIdHalf).epsilon(1e-10));
    CHECK(fc::weyl_derivative_right(id, FracOrder(0.5), 0.0, 1.0) ==
          doctest::Approx(oracle::kWeylRightIdHalf).epsilon(1e-10));
    CHECK(fc::weyl_derivative_right(one, FracOrder(0.5), 0.0, 1.0) == 0.0);
    CHECK(fc::weyl_derivative_right(one, FracOrder(0.5), 0.0, 1.0, fc::Centering::none) ==
          doctest::Approx(oracle::kWeylOneHalf).epsilon(1e-12));
    CHECK_THROWS_AS(fc::weyl_derivative_left(one, FracOrder(0.5), 0.0), DomainError);
    CHECK_THROWS_AS(fc::weyl_derivative_right(one, FracOrder(0.5), 1.0, 1.0), DomainError);
    const auto all = fc::weyl_derivative_left_all(id, FracOrder(0.5));
    CHECK(std::isnan(all[0]));
    CHECK(all[256] == doctest::Approx(oracle::kWeylIdHalf).epsilon(1e-10));
    const auto right = fc::weyl_derivative_right_all(id, FracOrder(0.5), 256);
    CHECK(std::isnan(right[256]));
    CHECK(right[0] == doctest::Approx(oracle::kWeylRightIdHalf).epsilon(1e-10));
}

TEST_CASE("derivative inverts the integral away from the origin")
{
    const auto g = TimeGrid::uniform(1.0, 1024);
    const auto f = test::fn_path(g, [](double t) { return 1.0 - 2.0 * t + 3.0 * t * t * t; });
    for (double a : {0.3, 0.5}) {
        const auto D = fc::weyl_derivative_left_all(fc::rl_integral_left_path(f, FracOrder(a)), FracOrder(a));
        double err = 0.0;
        for (std::size_t k = 128; k <= 1024; ++k) err = std::max(err, std::abs(D[k] - f(k)));
        CHECK(err < 1e-2);
    }
}

TEST_CASE("stieltjes integral of linear data")
{
    const auto id = test::identity_path(kGrid);
    const auto one = test::constant_path(kGrid, 1.0);
    CHECK(fc::stieltjes_integral_fractional(id, id, FracOrder(0.5), 1.0).value == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(fc::stieltjes_integral_fractional(one, id, FracOrder(0.5), 1.0).value == doctest::Approx(1.0).epsilon(1e-4));
    const auto rs = fc::stieltjes_integral_rs_sums(id, id, 1.0);
    CHECK(rs.route == fc::Route::riemann_stieltjes_sums);
    CHECK(rs.value == doctest::Approx(0.5 - 0.5 / 256.0).epsilon(1e-12));
    const auto j = rs.to_json();
    CHECK(j.contains("est_error"));
}

TEST_CASE("alpha window")
{
    const auto id = test::identity_path(kGrid);
    fc::StieltjesOptions opt;
    opt.lambda = 0.6;
    opt.mu = 0.6;
    const auto w = fc::admissible_window(id, id, opt);
    REQUIRE(w);
    CHECK(w->lower == doctest::Approx(0.4));
    CHECK(w->upper == doctest::Approx(0.6));
    CHECK_FALSE(w->estimated);
    CHECK(w->contains(0.5));

    opt.alpha = 0.3;
    CHECK_THROWS_AS(fc::stieltjes_integral_fractional(id, id, 1.0, opt), ParameterError);
    opt.alpha.reset();
    CHECK(fc::stieltjes_integral_fractional(id, id, 1.0, opt).alpha == doctest::Approx(0.5));
    opt.lambda = 0.4;
    opt.mu = 0.5;
    CHECK_THROWS_AS(fc::stieltjes_integral_fractional(id, id, 1.0, opt), ParameterError);
}

TEST_CASE("gfa1 analytic case")
{
    const auto one = test::constant_path(kGrid, 1.0);
    const auto id = test::identity_path(kGrid);
    const auto r = fc::bound_check_gfa1(one, id, FracOrder(0.5), 1.0);
    CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.rhs == doctest::Approx(oracle::kGfa1Rhs).epsilon(1e-3));
    CHECK(r.passed);
}

TEST_CASE("every other node")
{
    CHECK(fc::every_other_node(TimeGrid::uniform(1.0, 8)).steps() == 4);
    const auto odd = fc::every_other_node(TimeGrid::uniform(1.0, 7));
    CHECK(odd.horizon() == 1.0);
    CHECK(odd.steps() == 4);
}
