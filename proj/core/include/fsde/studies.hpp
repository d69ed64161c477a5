#pragma once

#include <cstdint>
#include <vector>

#include "fsde/euler.hpp"
#include "fsde/oracle.hpp"
#include "fsde/report.hpp"

namespace fsde::verify {

struct StrongStudyConfig {
    double horizon = 1.0;
    HurstParameter hurst{0.75};
    std::vector<std::size_t> levels{5, 6, 7, 8, 9};  ///< meshes 2^-k times horizon
    std::size_t fine_level = 12;                       ///< oracle and noise grid
    std::size_t mc_budget = 500;
    std::uint64_t seed = 0;
};

/// E sup_i |X^n(t_i) - oracle(t_i)| on each level, with noise generated on the
/// fine grid and restricted. Fits the order on log(error) against log(mesh).
ConvergenceStudy strong_convergence_study(sde::OracleKind kind, const sde::OracleParams& params,
                                          const StrongStudyConfig& config);

struct UniquenessConfig {
    std::vector<std::size_t> levels{4, 5, 6, 7, 8, 9, 10};
    std::size_t fine_level = 13;
    std::uint64_t seed = 0;
    bool identical_families = false;
    double grading = 1.5;  ///< second family: nodes T (i/n)^grading snapped to the fine grid
    std::size_t anchor_level = 4;  ///< both families contain the uniform 2^anchor_level nodes
    std::size_t replicas = 8;      ///< noise bundles (seed, 0..replicas-1); distances are averaged
};

/// Solves along a uniform and a graded partition family with the same frozen
/// noise and records the sup distance of the two approximations over the
/// shared anchor nodes against the mesh 2^-k T, averaged over replicas. The distance of the linear
/// interpolants on the merged grid is kept in meta["interpolated_distances"].
ConvergenceStudy pathwise_uniqueness_harness(const sde::SDEProblem& problem, const UniquenessConfig& config);

/// Nodes T (i/steps)^grading snapped to the fine grid, plus the uniform
/// anchor_steps nodes when anchor_steps > 0.
TimeGrid graded_grid(const TimeGrid& fine, std::size_t steps, double grading, std::size_t anchor_steps = 0);

struct MomentConfig {
    std::vector<std::size_t> steps{64, 128, 256};
    std::size_t order = 1;  ///< N
    std::size_t mc_budget = 2000;
    std::uint64_t noise_seed = 0;  ///< frozen B^H
    std::uint64_t mc_seed = 1;     ///< W replicas, shared across n
    double min_lag_cells = 4.0;
    double tolerance = 0.5;
};

struct MomentPlateau {
    std::size_t steps = 0;
    double plateau = 0.0;  ///< max over pairs of E|X_t - X_s|^{2N} / |t-s|^N
    double std_error = 0.0;
    double s = 0.0;
    double t = 0.0;
};

/// Per-level plateaus; the report passes when every plateau lies within
/// tolerance of their mean. lhs = largest plateau, rhs = mean plateau.
EstimateReport moment_bound_audit(const sde::SDEProblem& problem, const MomentConfig& config,
                                  std::vector<MomentPlateau>* plateaus = nullptr);

/// Exact E|X_t - X_s|^{2N} of the Euler scheme for dX = sigma X dW on a
/// uniform grid with mesh h, s = i h, t = (i + k) h, N in {1, 2}.
double euler_gbm_increment_moment(double x0, double sigma, double h, std::size_t i, std::size_t k, std::size_t order);

}  // namespace fsde::verify
