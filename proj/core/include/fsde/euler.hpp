#pragma once

#include <cstdint>
#include <memory>

#include "fsde/coefficients.hpp"
#include "fsde/noise.hpp"

namespace fsde::sde {

inline constexpr double kBlowUpGuard = 1e150;

struct SDEProblem {
    CoefficientSet coeffs;
    Vector x0;
    double horizon = 1.0;
    HurstParameter hurst{0.75};

    /// Throws ParameterError on dimension mismatch or T <= 0.
    void validate() const;
};

struct EulerRun {
    std::shared_ptr<const SDEProblem> problem;
    TimeGrid grid;
    noise::NoiseBundle noise;
    SamplePath path;
};

/// X(t_{i+1}) = X(t_i) + b dt + sW dW + sH dB^H with coefficients frozen at (t_i, X(t_i)).
/// Throws BlowUpError at the first node where the state is non-finite or exceeds 1e150.
SamplePath euler_path(const SDEProblem& problem, const noise::NoiseBundle& noise);
SamplePath euler_path(const SDEProblem& problem, const Vector& x0, const SamplePath& fbm, const SamplePath& bm);

EulerRun euler_solve(std::shared_ptr<const SDEProblem> problem, const TimeGrid& grid, noise::NoiseBundle noise);

/// x0 + spread * N(0, I) from the initial-state substream of seed.
Vector sample_initial_state(const Vector& mean, double spread, std::uint64_t seed);

}  // namespace fsde::sde
