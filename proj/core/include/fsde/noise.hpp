#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "fsde/grid.hpp"
#include "fsde/path.hpp"
#include "fsde/types.hpp"

namespace fsde::noise {

/// Largest number of steps for which the O(n^3) Cholesky method is used by default.
inline constexpr std::size_t kCholeskyStepCap = 2048;

/// R_H(s,t) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2. Accepts any H in (0,1), so that
/// H = 1/2 can be used to cross-check against min(s,t).
double fbm_covariance(double s, double t, double hurst);
double fbm_covariance(double s, double t, HurstParameter hurst);

/// Exact fBm sampler from the Cholesky factor of [R_H(t_i, t_j)], i, j >= 1.
/// Works on any grid. The factor is computed once and shared by all samples.
class CholeskySampler {
  public:
    CholeskySampler(TimeGrid grid, HurstParameter hurst, std::size_t step_cap = kCholeskyStepCap);

    /// m independent columns; column c draws from stream (seed, fbm, path, c).
    [[nodiscard]] SamplePath sample(std::uint64_t seed, std::uint64_t path, std::size_t m) const;

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    /// True if the first factorization attempt failed and diagonal jitter was added.
    [[nodiscard]] bool jittered() const noexcept { return jittered_; }

  private:
    TimeGrid grid_;
    HurstParameter hurst_;
    Eigen::MatrixXd factor_;
    bool jittered_ = false;
};

/// Exact fBm sampler on uniform grids via circulant embedding of the
/// fractional Gaussian noise autocovariance (Davies-Harte / Wood-Chan).
class CirculantSampler {
  public:
    CirculantSampler(TimeGrid grid, HurstParameter hurst);

    [[nodiscard]] SamplePath sample(std::uint64_t seed, std::uint64_t path, std::size_t m) const;

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    /// Number of slightly negative embedding eigenvalues that were clamped to zero.
    [[nodiscard]] std::size_t clamped_eigenvalues() const noexcept { return clamped_; }

  private:
    struct Plan;

    TimeGrid grid_;
    HurstParameter hurst_;
    std::vector<double> sqrt_eigen_;
    std::shared_ptr<Plan> plan_;
    std::size_t clamped_ = 0;
};

/// Clamps eigenvalues whose most negative member exceeds -tolerance * max|lambda|;
/// throws EmbeddingError otherwise. Returns the number of clamped entries.
std::size_t clamp_embedding_eigenvalues(std::vector<double>& eigenvalues, double tolerance = 1e-10);

enum class FbmMethod { automatic, cholesky, circulant };

SamplePath generate_fbm_cholesky(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed);
SamplePath generate_fbm_circulant(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed);
/// Cholesky up to kCholeskyStepCap steps, circulant above it (uniform grids only).
SamplePath generate_fbm(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed);

/// Standard Brownian motion with independent N(0, dt I_r) increments.
SamplePath generate_bm(const TimeGrid& grid, std::size_t r, std::uint64_t seed, std::uint64_t path = 0);

/// Joint driving noise of one realization: independent fBm (m columns) and BM (r columns).
struct NoiseBundle {
    SamplePath fbm;
    SamplePath bm;
    std::uint64_t seed = 0;
    std::uint64_t path = 0;
    HurstParameter hurst;

    [[nodiscard]] const TimeGrid& grid() const noexcept { return fbm.grid(); }
    /// Exact: fBm and BM restricted to a subgrid keep their law on that subgrid.
    [[nodiscard]] NoiseBundle restrict_to(const TimeGrid& coarse) const;
};

/// Reusable generator for Monte Carlo: builds the fBm sampler once per grid.
class NoiseGenerator {
  public:
    NoiseGenerator(TimeGrid grid, HurstParameter hurst, std::size_t m, std::size_t r,
                   FbmMethod method = FbmMethod::automatic);

    [[nodiscard]] NoiseBundle operator()(std::uint64_t seed, std::uint64_t path = 0) const;
    [[nodiscard]] SamplePath fbm(std::uint64_t seed, std::uint64_t path = 0) const;
    [[nodiscard]] SamplePath bm(std::uint64_t seed, std::uint64_t path = 0) const;
    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }

  private:
    TimeGrid grid_;
    HurstParameter hurst_;
    std::size_t m_;
    std::size_t r_;
    std::shared_ptr<const CholeskySampler> cholesky_;
    std::shared_ptr<const CirculantSampler> circulant_;
};

}  // namespace fsde::noise
