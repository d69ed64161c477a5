#include <doctest.h>

#include <cmath>
#include <limits>

#include "fsde/errors.hpp"
#include "fsde/fracnorms.hpp"
#include "fsde/noise.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace fsde;
namespace oracle = fsde::test::oracle;
namespace fn = fsde::fracnorms;

namespace {
const TimeGrid kGrid = TimeGrid::uniform(1.0, 256);
}

TEST_CASE("norms of linear data are exact")
{
    const auto id = test::identity_path(kGrid);
    const auto one = test::constant_path(kGrid, 1.0);
    CHECK(fn::pointwise_alpha_norm(id, 1.0, AlphaParameter(0.4)) ==
          doctest::Approx(oracle::kPointwiseIdAlpha04).epsilon(1e-10));
    CHECK(fn::alpha_infty_norm(id, AlphaParameter(0.4)) == doctest::Approx(oracle::kPointwiseIdAlpha04).epsilon(1e-10));
    CHECK(fn::one_minus_alpha_infty_norm(id, FracOrder(0.5)) ==
          doctest::Approx(oracle::kOneMinusAlphaIdHalf).epsilon(1e-10));
    CHECK(fn::alpha_one_norm(one, FracOrder(0.5)) == doctest::Approx(oracle::kAlphaOneConstHalf).epsilon(1e-10));
    CHECK(fn::alpha_one_norm(id, FracOrder(0.5)) == doctest::Approx(oracle::kAlphaOneIdHalf).epsilon(1e-4));
    CHECK(fn::lambda_alpha(id, FracOrder(0.5)) == doctest::Approx(oracle::kLambdaIdHalf).epsilon(1e-10));
}

TEST_CASE("hoelder norm of sqrt")
{
    const auto sq = test::fn_path(kGrid, [](double t) { return std::sqrt(t); });
    CHECK(fn::hoelder_norm(sq, 0.5) == doctest::Approx(oracle::kHoelderSqrtHalf).epsilon(1e-12));
    CHECK_THROWS_AS(fn::hoelder_norm(sq, 0.0), DomainError);
    CHECK_THROWS_AS(fn::hoelder_norm(sq, 1.5), DomainError);
}

TEST_CASE("delta seminorm")
{
    const auto id = test::identity_path(kGrid);
    CHECK(fn::delta_seminorm(id, 1.0, AlphaParameter(0.3), 0.6) ==
          doctest::Approx(oracle::kDeltaIdA03D06).epsilon(2e-2));
    CHECK(fn::delta_seminorm(id, 0.0, AlphaParameter(0.3), 0.6) == 0.0);
    CHECK(std::isinf(fn::delta_seminorm(id, 1.0, AlphaParameter(0.3), 0.2)));
    CHECK_THROWS_AS(fn::delta_seminorm(id, 1.0, AlphaParameter(0.3), 0.0), DomainError);
    CHECK_THROWS_AS(fn::delta_seminorm(id, 0.3, AlphaParameter(0.3), 1.0), NodeError);
    CHECK_THROWS_AS(fn::delta_seminorm_at(id, 257, AlphaParameter(0.3), 1.0), NodeError);
}

TEST_CASE("delta seminorm of a Hoelder function obeys the power bound")
{
    // |f(t)-f(s)| <= N |t-s|^eta gives N^delta s^{eta delta - alpha} / (eta delta - alpha).
    const double N = 2.0;
    const double eta = 0.5;
    const auto f = test::fn_path(kGrid, [N](double t) { return N * std::sqrt(t); });
    for (double delta : {1.0, 0.8}) {
        const double alpha = 0.2;
        const double e = eta * delta - alpha;
        for (std::size_t k : {16, 128, 256}) {
            const double s = kGrid[k];
            CHECK(fn::delta_seminorm_at(f, k, AlphaParameter(alpha), delta) <=
                  std::pow(N, delta) * std::pow(s, e) / e);
        }
    }
}

TEST_CASE("lambda is bounded by the (1-alpha) norm")
{
    const auto g = noise::generate_fbm(kGrid, HurstParameter(0.75), 1, 17);
    for (double a : {0.3, 0.4}) {
        const FracOrder alpha(a);
        const double bound =
            fn::one_minus_alpha_infty_norm(g, alpha) / (std::tgamma(1.0 - a) * std::tgamma(a));
        CHECK(fn::lambda_alpha(g, alpha) <= bound);
    }
}

TEST_CASE("vector paths use the euclidean norm")
{
    Matrix v(kGrid.size(), 2);
    for (std::size_t i = 0; i < kGrid.size(); ++i) v.row(static_cast<Eigen::Index>(i)) << kGrid[i], kGrid[i];
    const SamplePath p(kGrid, v);
    CHECK(fn::pointwise_alpha_norm(p, 1.0, AlphaParameter(0.4)) ==
          doctest::Approx(std::sqrt(2.0) * oracle::kPointwiseIdAlpha04).epsilon(1e-10));
}

TEST_CASE("pairwise functionals respect the step cap")
{
    const auto id = test::identity_path(kGrid);
    CHECK_THROWS_AS(fn::hoelder_norm(id, 0.5, {128}), CapacityError);
    CHECK_THROWS_AS(fn::lambda_alpha(id, FracOrder(0.4), {128}), CapacityError);
    CHECK_THROWS_AS(fn::one_minus_alpha_infty_norm(id, FracOrder(0.4), {128}), CapacityError);
    CHECK_NOTHROW(fn::hoelder_norm(id, 0.5, {256}));
}

TEST_CASE("norm reports")
{
    const auto id = test::identity_path(kGrid);
    const auto r = fn::evaluate(fn::NormKind::pointwise_alpha, id, 0.4);
    CHECK(r.value == doctest::Approx(oracle::kPointwiseIdAlpha04).epsilon(1e-10));
    const auto j = r.to_json();
    CHECK(j.at("n") == 256);
    CHECK(j.at("kind") == std::string(fn::to_string(fn::NormKind::pointwise_alpha)));
    CHECK(fn::evaluate(fn::NormKind::hoelder_mu, id, 1.0).value == doctest::Approx(2.0));
}
