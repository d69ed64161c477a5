#include "fsde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "fsde/errors.hpp"
#include "fsde/rng.hpp"

namespace fsde::noise {

double fbm_covariance(double s, double t, double hurst)
{
    if (s < 0.0 || t < 0.0) throw DomainError("fBm covariance needs non-negative times");
    if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("Hurst index must lie in (0,1)");
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
}

double fbm_covariance(double s, double t, HurstParameter hurst)
{
    return fbm_covariance(s, t, hurst.value());
}

// ---------------------------------------------------------------------------
// Cholesky

namespace {

// Returns 0 on success, else the 1-based order of the failing leading minor.
std::size_t factorize_lower(Eigen::MatrixXd& a)
{
    const Eigen::Index failed = Eigen::internal::llt_inplace<double, Eigen::Lower>::blocked(a);
    return failed < 0 ? 0 : static_cast<std::size_t>(failed) + 1;
}

}  // namespace

CholeskySampler::CholeskySampler(TimeGrid grid, HurstParameter hurst, std::size_t step_cap)
    : grid_(std::move(grid)), hurst_(hurst)
{
    const std::size_t n = grid_.steps();
    if (n > step_cap) {
        throw CapacityError("Cholesky fBm limited to " + std::to_string(step_cap) + " steps, grid has " +
                            std::to_string(n));
    }
    const auto en = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd cov(en, en);
    for (Eigen::Index i = 0; i < en; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = fbm_covariance(grid_[static_cast<std::size_t>(i) + 1],
                                            grid_[static_cast<std::size_t>(j) + 1], hurst_);
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }
    factor_ = cov;
    std::size_t info = factorize_lower(factor_);
    if (info > 0) {
        jittered_ = true;
        const double jitter = 1e-12 * cov.trace() / static_cast<double>(n);
        factor_ = cov;
        factor_.diagonal().array() += jitter;
        info = factorize_lower(factor_);
    }
    if (info > 0) {
        throw FactorizationError(info,
                                 "fBm covariance is not numerically positive definite: leading minor " +
                                     std::to_string(info) + " failed after jitter");
    }
    factor_.triangularView<Eigen::StrictlyUpper>().setZero();
}

SamplePath CholeskySampler::sample(std::uint64_t seed, std::uint64_t path, std::size_t m) const
{
    if (m == 0) throw DomainError("fBm dimension must be at least 1");
    const auto n = factor_.rows();
    Eigen::MatrixXd z(n, static_cast<Eigen::Index>(m));
    for (std::size_t c = 0; c < m; ++c) {
        RandomStream stream(seed, {StreamKind::fbm, path, static_cast<std::uint32_t>(c)});
        for (Eigen::Index i = 0; i < n; ++i) z(i, static_cast<Eigen::Index>(c)) = stream.normal();
    }
    Matrix values = Matrix::Zero(n + 1, static_cast<Eigen::Index>(m));
    values.bottomRows(n) = factor_.triangularView<Eigen::Lower>() * z;
    return SamplePath(grid_, std::move(values));
}

// ---------------------------------------------------------------------------
// Circulant embedding

namespace {

std::mutex& fftw_planner_mutex()
{
    static std::mutex mutex;
    return mutex;
}

double fgn_autocovariance(std::size_t k, double hurst)
{
    const double two_h = 2.0 * hurst;
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) + std::pow(std::abs(kk - 1.0), two_h));
}

}  // namespace

struct CirculantSampler::Plan {
    explicit Plan(std::size_t size) : size(size)
    {
        auto* in = fftw_alloc_complex(size);
        auto* out = fftw_alloc_complex(size);
        {
            std::lock_guard lock(fftw_planner_mutex());
            plan = fftw_plan_dft_1d(static_cast<int>(size), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        }
        fftw_free(in);
        fftw_free(out);
        if (plan == nullptr) throw Error("FFTW planning failed");
    }
    ~Plan()
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    // fftw_execute_dft is thread safe on distinct, equally aligned buffers.
    void forward(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan, in, out); }

    std::size_t size;
    fftw_plan plan = nullptr;
};

std::size_t clamp_embedding_eigenvalues(std::vector<double>& eigenvalues, double tolerance)
{
    if (eigenvalues.empty()) return 0;
    const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
    const double scale = std::max(std::abs(*lo), std::abs(*hi));
    if (*lo >= 0.0) return 0;
    if (-*lo > tolerance * scale) {
        throw EmbeddingError("circulant embedding eigenvalue " + std::to_string(*lo) +
                             " is too negative to clamp (relative " + std::to_string(-*lo / scale) + ")");
    }
    std::size_t clamped = 0;
    for (double& ev : eigenvalues) {
        if (ev < 0.0) {
            ev = 0.0;
            ++clamped;
        }
    }
    return clamped;
}

CirculantSampler::CirculantSampler(TimeGrid grid, HurstParameter hurst) : grid_(std::move(grid)), hurst_(hurst)
{
    if (!grid_.is_uniform()) throw UnsupportedGridError("circulant embedding requires a uniform grid");
    const std::size_t n = grid_.steps();
    const std::size_t size = 2 * n;
    plan_ = std::make_shared<Plan>(size);

    auto* in = fftw_alloc_complex(size);
    auto* out = fftw_alloc_complex(size);
    for (std::size_t k = 0; k <= n; ++k) {
        in[k][0] = fgn_autocovariance(k, hurst_.value());
        in[k][1] = 0.0;
    }
    for (std::size_t k = n + 1; k < size; ++k) {
        in[k][0] = in[size - k][0];
        in[k][1] = 0.0;
    }
    plan_->forward(in, out);
    std::vector<double> eigen(size);
    for (std::size_t k = 0; k < size; ++k) eigen[k] = out[k][0];
    fftw_free(in);
    fftw_free(out);

    clamped_ = clamp_embedding_eigenvalues(eigen);
    sqrt_eigen_.resize(size);
    for (std::size_t k = 0; k < size; ++k) sqrt_eigen_[k] = std::sqrt(eigen[k] / static_cast<double>(size));
}

SamplePath CirculantSampler::sample(std::uint64_t seed, std::uint64_t path, std::size_t m) const
{
    if (m == 0) throw DomainError("fBm dimension must be at least 1");
    const std::size_t n = grid_.steps();
    const std::size_t size = 2 * n;
    const double scale = std::pow(grid_.mesh(), hurst_.value());

    Matrix values = Matrix::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(m));
    auto* in = fftw_alloc_complex(size);
    auto* out = fftw_alloc_complex(size);
    for (std::size_t c = 0; c < m; ++c) {
        RandomStream stream(seed, {StreamKind::fbm, path, static_cast<std::uint32_t>(c)});
        for (std::size_t k = 0; k < size; ++k) {
            in[k][0] = sqrt_eigen_[k] * stream.normal();
            in[k][1] = sqrt_eigen_[k] * stream.normal();
        }
        plan_->forward(in, out);
        double level = 0.0;
        const auto col = static_cast<Eigen::Index>(c);
        for (std::size_t k = 0; k < n; ++k) {
            level += scale * out[k][0];
            values(static_cast<Eigen::Index>(k + 1), col) = level;
        }
    }
    fftw_free(in);
    fftw_free(out);
    return SamplePath(grid_, std::move(values));
}

// ---------------------------------------------------------------------------

SamplePath generate_fbm_cholesky(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed)
{
    return CholeskySampler(grid, hurst).sample(seed, 0, m);
}

SamplePath generate_fbm_circulant(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed)
{
    return CirculantSampler(grid, hurst).sample(seed, 0, m);
}

SamplePath generate_fbm(const TimeGrid& grid, HurstParameter hurst, std::size_t m, std::uint64_t seed)
{
    if (grid.steps() <= kCholeskyStepCap) return generate_fbm_cholesky(grid, hurst, m, seed);
    return generate_fbm_circulant(grid, hurst, m, seed);
}

SamplePath generate_bm(const TimeGrid& grid, std::size_t r, std::uint64_t seed, std::uint64_t path)
{
    if (r == 0) throw DomainError("BM dimension must be at least 1");
    Matrix values = Matrix::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(r));
    for (std::size_t c = 0; c < r; ++c) {
        RandomStream stream(seed, {StreamKind::bm, path, static_cast<std::uint32_t>(c)});
        const auto col = static_cast<Eigen::Index>(c);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            values(static_cast<Eigen::Index>(i + 1), col) =
                values(static_cast<Eigen::Index>(i), col) + std::sqrt(grid.step(i)) * stream.normal();
        }
    }
    return SamplePath(grid, std::move(values));
}

NoiseBundle NoiseBundle::restrict_to(const TimeGrid& coarse) const
{
    return NoiseBundle{fbm.restrict_to(coarse), bm.restrict_to(coarse), seed, path, hurst};
}

NoiseGenerator::NoiseGenerator(TimeGrid grid, HurstParameter hurst, std::size_t m, std::size_t r, FbmMethod method)
    : grid_(std::move(grid)), hurst_(hurst), m_(m), r_(r)
{
    if (m_ == 0 || r_ == 0) throw DomainError("noise dimensions must be at least 1");
    if (method == FbmMethod::automatic) {
        method = grid_.steps() <= kCholeskyStepCap ? FbmMethod::cholesky : FbmMethod::circulant;
    }
    if (method == FbmMethod::cholesky) cholesky_ = std::make_shared<const CholeskySampler>(grid_, hurst_);
    else circulant_ = std::make_shared<const CirculantSampler>(grid_, hurst_);
}

SamplePath NoiseGenerator::fbm(std::uint64_t seed, std::uint64_t path) const
{
    return cholesky_ ? cholesky_->sample(seed, path, m_) : circulant_->sample(seed, path, m_);
}

SamplePath NoiseGenerator::bm(std::uint64_t seed, std::uint64_t path) const
{
    return generate_bm(grid_, r_, seed, path);
}

NoiseBundle NoiseGenerator::operator()(std::uint64_t seed, std::uint64_t path) const
{
    return NoiseBundle{fbm(seed, path), bm(seed, path), seed, path, hurst_};
}

}  // namespace fsde::noise
