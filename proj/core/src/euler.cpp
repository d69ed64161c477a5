#include "fsde/euler.hpp"

#include <cmath>
#include <string>

#include "fsde/errors.hpp"
#include "fsde/rng.hpp"

namespace fsde::sde {

void SDEProblem::validate() const
{
    coeffs.validate();
    if (static_cast<std::size_t>(x0.size()) != coeffs.d) {
        throw ParameterError("x0 has dimension " + std::to_string(x0.size()) + ", expected d = " +
                             std::to_string(coeffs.d));
    }
    if (!(horizon > 0.0)) throw ParameterError("horizon T must be positive");
}

SamplePath euler_path(const SDEProblem& problem, const Vector& x0, const SamplePath& fbm, const SamplePath& bm)
{
    const CoefficientSet& c = problem.coeffs;
    if (!(fbm.grid() == bm.grid())) throw DomainError("fBm and BM must share a grid");
    if (fbm.dim() != c.m || bm.dim() != c.r) throw ParameterError("noise dimensions do not match (m, r)");
    if (static_cast<std::size_t>(x0.size()) != c.d) throw ParameterError("x0 dimension does not match d");

    const TimeGrid& grid = fbm.grid();
    const auto d = static_cast<Eigen::Index>(c.d);
    Matrix values(static_cast<Eigen::Index>(grid.size()), d);
    Vector x = x0;
    values.row(0) = x.transpose();
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double t = grid[i];
        const double dt = grid.step(i);
        const auto ii = static_cast<Eigen::Index>(i);
        const Vector dw = (bm.values().row(ii + 1) - bm.values().row(ii)).transpose();
        const Vector db = (fbm.values().row(ii + 1) - fbm.values().row(ii)).transpose();
        x += c.b(t, x) * dt + c.sigma_w(t, x) * dw + c.sigma_h(t, x) * db;
        const double size = x.norm();
        if (!std::isfinite(size) || size > kBlowUpGuard) {
            throw BlowUpError(i + 1, grid[i + 1],
                              "Euler state left the finite range at node " + std::to_string(i + 1) +
                                  " (t = " + std::to_string(grid[i + 1]) + ")");
        }
        values.row(ii + 1) = x.transpose();
    }
    return {grid, std::move(values)};
}

SamplePath euler_path(const SDEProblem& problem, const noise::NoiseBundle& noise)
{
    return euler_path(problem, problem.x0, noise.fbm, noise.bm);
}

EulerRun euler_solve(std::shared_ptr<const SDEProblem> problem, const TimeGrid& grid, noise::NoiseBundle noise)
{
    if (!problem) throw ParameterError("null problem");
    problem->validate();
    if (!(noise.grid() == grid)) throw DomainError("noise must be sampled on the solver grid");
    if (std::abs(grid.horizon() - problem->horizon) > 1e-12 * problem->horizon) {
        throw DomainError("grid horizon differs from the problem horizon");
    }
    SamplePath path = euler_path(*problem, noise);
    return EulerRun{std::move(problem), grid, std::move(noise), std::move(path)};
}

Vector sample_initial_state(const Vector& mean, double spread, std::uint64_t seed)
{
    RandomStream rng(seed, StreamId{StreamKind::initial_state, 0, 0});
    Vector x = mean;
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += spread * rng.normal();
    return x;
}

}  // namespace fsde::sde
