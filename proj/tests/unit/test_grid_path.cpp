#include <doctest.h>

#include <sstream>

#include "fsde/csv.hpp"
#include "fsde/errors.hpp"
#include "fsde/grid.hpp"
#include "fsde/path.hpp"
#include "fsde/types.hpp"
#include "test_support.hpp"

using namespace fsde;

TEST_CASE("parameter types enforce their ranges")
{
    CHECK_NOTHROW(HurstParameter(0.75));
    CHECK_THROWS_AS(HurstParameter(0.4), DomainError);
    CHECK_THROWS_AS(HurstParameter(0.5), DomainError);
    CHECK_THROWS_AS(HurstParameter(1.0), DomainError);
    CHECK_THROWS_AS(AlphaParameter(0.5), DomainError);
    CHECK_THROWS_AS(AlphaParameter(0.0), DomainError);
    CHECK_THROWS_AS(FracOrder(1.0), DomainError);
    CHECK(FracOrder(0.3).complement().value() == doctest::Approx(0.7));
    CHECK(FracOrder(AlphaParameter(0.2)).value() == 0.2);
}

TEST_CASE("uniform grid")
{
    const auto g = TimeGrid::uniform(2.0, 8);
    CHECK(g.steps() == 8);
    CHECK(g.size() == 9);
    CHECK(g.is_uniform());
    CHECK(g.mesh() == doctest::Approx(0.25));
    CHECK(g.horizon() == 2.0);
    CHECK(g.node_index(0.5) == 2);
    CHECK(g.cell_index(0.6) == 2);
    CHECK(g.cell_index(2.0) == 8);
    CHECK(g.project(0.6) == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)g.node_index(0.3), NodeError);
    CHECK_THROWS_AS((void)g.cell_index(2.5), DomainError);
    CHECK(g.coarsen(4).steps() == 2);
    CHECK_THROWS_AS((void)g.coarsen(3), DomainError);
    CHECK(g.refines(g.coarsen(2)));
    CHECK_FALSE(g.coarsen(2).refines(g));
    CHECK(g.prefix(4).horizon() == doctest::Approx(1.0));
    CHECK(g.slice(2, 6).horizon() == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)g.slice(3, 3), DomainError);
}

TEST_CASE("grid construction errors")
{
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 4), DomainError);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 0), DomainError);
    CHECK_THROWS_AS(TimeGrid::from_nodes({0.0}), DomainError);
    CHECK_THROWS_AS(TimeGrid::from_nodes({0.1, 1.0}), DomainError);
    CHECK_THROWS_AS(TimeGrid::from_nodes({0.0, 0.5, 0.5, 1.0}), DomainError);
    CHECK_FALSE(TimeGrid::from_nodes({0.0, 0.1, 1.0}).is_uniform());
    CHECK_THROWS_AS(merge(TimeGrid::uniform(1.0, 2), TimeGrid::uniform(2.0, 2)), DomainError);
    const auto m = merge(TimeGrid::uniform(1.0, 2), TimeGrid::uniform(1.0, 3));
    CHECK(m.steps() == 4);
}

TEST_CASE("sample path operations")
{
    const auto g = TimeGrid::uniform(1.0, 4);
    const auto f = test::identity_path(g);
    CHECK(f.dim() == 1);
    CHECK(f(2) == doctest::Approx(0.5));
    CHECK(f.restrict_to(g.coarsen(2))(1) == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)f.restrict_to(TimeGrid::uniform(1.0, 3)), UnsupportedGridError);
    const auto fine = f.interpolate_to(TimeGrid::uniform(1.0, 8));
    CHECK(fine(3) == doctest::Approx(0.375));
    CHECK(sup_distance(f, 2.0 * f) == doctest::Approx(1.0));
    CHECK((f - f).values().norm() == 0.0);
    const auto c = test::constant_path(g, 3.0).centered();
    CHECK(c.values().norm() == 0.0);
    CHECK_THROWS_AS(SamplePath(g, Matrix::Zero(3, 1)), DomainError);
    CHECK_THROWS_AS((void)f.component(1), DomainError);
    CHECK_THROWS_AS(sup_distance(f, test::identity_path(TimeGrid::uniform(1.0, 5))), DomainError);
}

TEST_CASE("csv round trip is exact")
{
    const auto g = test::jittered_grid(1.7, 13, 3);
    Matrix v(14, 2);
    for (Eigen::Index i = 0; i < 14; ++i) {
        v(i, 0) = std::sin(0.1 + i) / 3.0;
        v(i, 1) = 1e-300 * i - 7.0 / (i + 1);
    }
    const SamplePath p(g, v);
    std::istringstream in(path_to_csv(p));
    const SamplePath q = read_path_csv(in);
    CHECK(q.grid() == g);
    CHECK(q.values() == p.values());
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("csv reader rejects malformed input")
{
    std::istringstream empty("");
    CHECK_THROWS_AS(read_path_csv(empty), IoError);
    std::istringstream fields("t,x1\n0,1\n1,2,3\n");
    CHECK_THROWS_AS(read_path_csv(fields), IoError);
    std::istringstream number("t,x1\n0,abc\n");
    CHECK_THROWS_AS(read_path_csv(number), IoError);
}

TEST_CASE("atomic write replaces the target")
{
    test::TempDir dir("csv");
    const auto target = dir.path() / "a.txt";
    write_file_atomic(target, "one");
    write_file_atomic(target, "two");
    CHECK(test::read_file(target) == "two");
    write_file_atomic(dir.path() / "sub" / "b.txt", "x");
    CHECK(test::read_file(dir.path() / "sub" / "b.txt") == "x");
}
