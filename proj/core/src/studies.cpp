#include "fsde/studies.hpp"

#include <algorithm>
#include <cmath>

#include <tbb/parallel_for.h>

#include "fsde/errors.hpp"
#include "fsde/registry.hpp"

namespace fsde::verify {

namespace {

std::size_t pow2(std::size_t k)
{
    return std::size_t{1} << k;
}

nlohmann::json family_params(sde::OracleKind kind, const sde::OracleParams& p)
{
    switch (kind) {
    case sde::OracleKind::drift_only: return {{"c0", p.c0}, {"c1", p.c1}, {"omega", p.omega}};
    case sde::OracleKind::ito_gbm: return {{"mu", p.mu}, {"sigma", p.sigma}};
    case sde::OracleKind::young_exponential: return {{"scale", p.scale}};
    case sde::OracleKind::mixed_exponential: return {{"sigma", p.sigma}};
    }
    return {};
}

// Runs fn(j) for j in [0, count) in parallel chunks and hands the results to
// sink(j, result) in index order.
template <typename Fn, typename Sink>
void ordered_parallel(std::size_t count, Fn&& fn, Sink&& sink)
{
    constexpr std::size_t kChunk = 64;
    using Result = decltype(fn(std::size_t{0}));
    for (std::size_t start = 0; start < count; start += kChunk) {
        const std::size_t stop = std::min(count, start + kChunk);
        std::vector<Result> chunk(stop - start);
        tbb::parallel_for(start, stop, [&](std::size_t j) { chunk[j - start] = fn(j); });
        for (std::size_t j = start; j < stop; ++j) sink(j, chunk[j - start]);
    }
}

}  // namespace

ConvergenceStudy strong_convergence_study(sde::OracleKind kind, const sde::OracleParams& params,
                                          const StrongStudyConfig& config)
{
    if (config.levels.size() < 2) throw ParameterError("need at least two levels");
    for (std::size_t k : config.levels) {
        if (k > config.fine_level) throw ParameterError("levels must not exceed the fine level");
    }
    std::vector<std::size_t> levels = config.levels;
    std::sort(levels.begin(), levels.end());

    sde::SDEProblem problem{sde::coefficient_registry().make(sde::family_for(kind), family_params(kind, params)),
                            Vector::Constant(1, params.x0), config.horizon, config.hurst};
    problem.validate();

    const TimeGrid fine = TimeGrid::uniform(config.horizon, pow2(config.fine_level));
    const noise::NoiseGenerator gen(fine, config.hurst, 1, 1);
    std::vector<TimeGrid> grids;
    for (std::size_t k : levels) grids.push_back(fine.coarsen(pow2(config.fine_level - k)));

    const std::size_t replicas = kind == sde::OracleKind::drift_only ? 1 : config.mc_budget;
    std::vector<double> totals(levels.size(), 0.0);
    ordered_parallel(
        replicas,
        [&](std::size_t j) {
            const noise::NoiseBundle nb = gen(config.seed, j);
            const SamplePath exact = sde::closed_form_oracle(kind, params, nb);
            std::vector<double> errs;
            for (const TimeGrid& g : grids) {
                const SamplePath x = sde::euler_path(problem, nb.restrict_to(g));
                errs.push_back(sup_distance(x, exact.restrict_to(g)));
            }
            return errs;
        },
        [&](std::size_t, const std::vector<double>& errs) {
            for (std::size_t i = 0; i < errs.size(); ++i) totals[i] += errs[i];
        });

    std::vector<double> meshes;
    std::vector<double> errors;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        meshes.push_back(grids[i].mesh());
        errors.push_back(totals[i] / static_cast<double>(replicas));
    }
    ConvergenceStudy s = ConvergenceStudy::fit(std::string("strong_") + std::string(sde::to_string(kind)),
                                               std::move(meshes), std::move(errors));
    s.meta = {{"oracle", sde::to_string(kind)},
              {"H", config.hurst.value()},
              {"mc_budget", replicas},
              {"seed", config.seed},
              {"fine_steps", fine.steps()}};
    return s;
}

TimeGrid graded_grid(const TimeGrid& fine, std::size_t steps, double grading, std::size_t anchor_steps)
{
    if (steps == 0) throw ParameterError("graded grid needs at least one step");
    const std::size_t nf = fine.steps();
    if (anchor_steps > 0 && nf % anchor_steps != 0) throw ParameterError("anchor steps must divide the fine steps");
    std::vector<std::size_t> idx{0};
    for (std::size_t i = 1; i <= steps; ++i) {
        const double u = std::pow(static_cast<double>(i) / static_cast<double>(steps), grading);
        const auto j = static_cast<std::size_t>(std::llround(u * static_cast<double>(nf)));
        if (j > idx.back()) idx.push_back(std::min(j, nf));
    }
    if (idx.back() != nf) idx.push_back(nf);
    if (anchor_steps > 0) {
        for (std::size_t i = 1; i < anchor_steps; ++i) idx.push_back(i * (nf / anchor_steps));
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    std::vector<double> nodes;
    nodes.reserve(idx.size());
    for (std::size_t j : idx) nodes.push_back(fine[j]);
    return TimeGrid::from_nodes(std::move(nodes));
}

ConvergenceStudy pathwise_uniqueness_harness(const sde::SDEProblem& problem, const UniquenessConfig& config)
{
    problem.validate();
    if (config.levels.size() < 2) throw ParameterError("need at least two levels");
    std::vector<std::size_t> levels = config.levels;
    std::sort(levels.begin(), levels.end());
    if (levels.back() > config.fine_level) throw ParameterError("levels must not exceed the fine level");
    if (config.anchor_level > levels.front()) throw ParameterError("anchor level must not exceed the coarsest level");

    const TimeGrid fine = TimeGrid::uniform(problem.horizon, pow2(config.fine_level));
    const noise::NoiseGenerator gen(fine, problem.hurst, problem.coeffs.m, problem.coeffs.r);
    if (config.replicas == 0) throw ParameterError("need at least one replica");

    const std::size_t anchor_stride = pow2(config.fine_level - config.anchor_level);
    const TimeGrid anchors = fine.coarsen(anchor_stride);
    std::vector<double> meshes;
    std::vector<std::pair<TimeGrid, TimeGrid>> families;
    for (std::size_t k : levels) {
        const std::size_t n = pow2(k);
        TimeGrid a = fine.coarsen(pow2(config.fine_level - k));
        TimeGrid b = config.identical_families
                         ? a
                         : graded_grid(fine, static_cast<std::size_t>(std::ceil(config.grading * n)), config.grading,
                                       pow2(config.anchor_level));
        families.emplace_back(std::move(a), std::move(b));
        meshes.push_back(problem.horizon / static_cast<double>(n));
    }

    std::vector<double> distances(levels.size(), 0.0);
    std::vector<double> interpolated(levels.size(), 0.0);
    const double weight = 1.0 / static_cast<double>(config.replicas);
    for (std::size_t rep = 0; rep < config.replicas; ++rep) {
        const noise::NoiseBundle nb = gen(config.seed, rep);
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const auto& [a, b] = families[l];
            const SamplePath xa = sde::euler_path(problem, nb.restrict_to(a));
            const SamplePath xb = sde::euler_path(problem, nb.restrict_to(b));
            const TimeGrid joint = merge(a, b);
            distances[l] += weight * sup_distance(xa.interpolate_to(anchors), xb.interpolate_to(anchors));
            interpolated[l] += weight * sup_distance(xa.interpolate_to(joint), xb.interpolate_to(joint));
        }
    }

    std::size_t inversions = 0;
    for (std::size_t i = 2; i < distances.size(); ++i) {
        if (distances[i] > distances[i - 1]) ++inversions;
    }
    const double final_distance = distances.back();
    ConvergenceStudy s = ConvergenceStudy::fit("pathwise_uniqueness", std::move(meshes), std::move(distances));
    s.meta = {{"family", problem.coeffs.family},
              {"params", problem.coeffs.params},
              {"seed", config.seed},
              {"fine_steps", fine.steps()},
              {"inversions", inversions},
              {"monotone", inversions <= 1},
              {"final_distance", final_distance},
              {"anchor_steps", anchors.steps()},
              {"replicas", config.replicas},
              {"interpolated_distances", interpolated}};
    return s;
}

double euler_gbm_increment_moment(double x0, double sigma, double h, std::size_t i, std::size_t k, std::size_t order)
{
    const double v = sigma * sigma * h;
    const double m2 = 1.0 + v;
    const double m3 = 1.0 + 3.0 * v;
    const double m4 = 1.0 + 6.0 * v + 3.0 * v * v;
    const auto ki = static_cast<double>(k);
    const auto ii = static_cast<double>(i);
    if (order == 1) return x0 * x0 * std::pow(m2, ii) * (std::pow(m2, ki) - 1.0);
    if (order == 2) {
        const double incr = std::pow(m4, ki) - 4.0 * std::pow(m3, ki) + 6.0 * std::pow(m2, ki) - 3.0;
        return std::pow(x0, 4) * std::pow(m4, ii) * incr;
    }
    throw ParameterError("moment order must be 1 or 2");
}

EstimateReport moment_bound_audit(const sde::SDEProblem& problem, const MomentConfig& config,
                                  std::vector<MomentPlateau>* plateaus)
{
    problem.validate();
    if (config.order != 1 && config.order != 2) throw ParameterError("moment order N must be 1 or 2");
    if (config.steps.empty()) throw ParameterError("need at least one grid size");
    if (config.mc_budget < 2) throw ParameterError("Monte Carlo budget must be at least 2");
    const std::size_t nmax = *std::max_element(config.steps.begin(), config.steps.end());
    for (std::size_t n : config.steps) {
        if (n == 0 || nmax % n != 0) throw ParameterError("grid sizes must divide the largest one");
    }
    const TimeGrid top = TimeGrid::uniform(problem.horizon, nmax);
    const SamplePath bh = noise::generate_fbm(top, problem.hurst, problem.coeffs.m, config.noise_seed);
    std::vector<TimeGrid> grids;
    std::vector<SamplePath> fbms;
    for (std::size_t n : config.steps) {
        grids.push_back(top.coarsen(nmax / n));
        fbms.push_back(bh.restrict_to(grids.back()));
    }

    const auto p = static_cast<double>(config.order);
    // Pair sums, upper triangle stored row-major per level.
    std::vector<std::vector<double>> sum(grids.size());
    std::vector<std::vector<double>> sumsq(grids.size());
    for (std::size_t g = 0; g < grids.size(); ++g) {
        const std::size_t n1 = grids[g].size();
        sum[g].assign(n1 * n1, 0.0);
        sumsq[g].assign(n1 * n1, 0.0);
    }

    ordered_parallel(
        config.mc_budget,
        [&](std::size_t j) {
            const SamplePath w = noise::generate_bm(top, problem.coeffs.r, config.mc_seed, j);
            std::vector<SamplePath> xs;
            for (std::size_t g = 0; g < grids.size(); ++g) {
                xs.push_back(sde::euler_path(problem, problem.x0, fbms[g], w.restrict_to(grids[g])));
            }
            return xs;
        },
        [&](std::size_t, const std::vector<SamplePath>& xs) {
            for (std::size_t g = 0; g < grids.size(); ++g) {
                const std::size_t n1 = grids[g].size();
                const Matrix& x = xs[g].values();
                for (std::size_t i = 0; i < n1; ++i) {
                    for (std::size_t l = i + 1; l < n1; ++l) {
                        const double d2 =
                            (x.row(static_cast<Eigen::Index>(l)) - x.row(static_cast<Eigen::Index>(i))).squaredNorm();
                        const double v = config.order == 1 ? d2 : d2 * d2;
                        sum[g][i * n1 + l] += v;
                        sumsq[g][i * n1 + l] += v * v;
                    }
                }
            }
        });

    const double M = static_cast<double>(config.mc_budget);
    std::vector<MomentPlateau> result;
    for (std::size_t g = 0; g < grids.size(); ++g) {
        const TimeGrid& grid = grids[g];
        const std::size_t n1 = grid.size();
        MomentPlateau best;
        best.steps = grid.steps();
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t l = i + 1; l < n1; ++l) {
                const double lag = grid[l] - grid[i];
                if (lag < config.min_lag_cells * grid.mesh() * (1.0 - 1e-9)) continue;
                const double scale = std::pow(lag, p);
                const double mean = sum[g][i * n1 + l] / M;
                const double ratio = mean / scale;
                if (ratio > best.plateau) {
                    const double var = std::max(0.0, sumsq[g][i * n1 + l] / M - mean * mean) * M / (M - 1.0);
                    best.plateau = ratio;
                    best.std_error = std::sqrt(var / M) / scale;
                    best.s = grid[i];
                    best.t = grid[l];
                }
            }
        }
        result.push_back(best);
    }

    double mean = 0.0;
    double hi = 0.0;
    for (const auto& r : result) {
        mean += r.plateau;
        hi = std::max(hi, r.plateau);
    }
    mean /= static_cast<double>(result.size());
    bool uniform = true;
    bool noisy = false;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& r : result) {
        uniform = uniform && std::abs(r.plateau - mean) <= config.tolerance * mean;
        noisy = noisy || (r.plateau > 0.0 && r.std_error > 0.1 * r.plateau);
        levels.push_back({{"n", r.steps}, {"plateau", r.plateau}, {"std_error", r.std_error}, {"s", r.s}, {"t", r.t}});
    }
    EstimateReport report = EstimateReport::make(
        "z7_N" + std::to_string(config.order), hi, mean, 1.0 + config.tolerance,
        {{"N", config.order}, {"levels", levels}, {"mc_budget", config.mc_budget},
         {"noise_seed", config.noise_seed}, {"mc_seed", config.mc_seed}, {"family", problem.coeffs.family}});
    report.passed = uniform;
    report.inconclusive = noisy;
    report.std_error = 0.0;
    for (const auto& r : result) report.std_error = std::max(report.std_error, r.std_error);
    if (plateaus) *plateaus = std::move(result);
    return report;
}

}  // namespace fsde::verify
