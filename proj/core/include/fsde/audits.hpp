#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fsde/coefficients.hpp"
#include "fsde/path.hpp"
#include "fsde/report.hpp"
#include "fsde/types.hpp"

/// Empirical audits of the a-priori estimates for the drift, fBm and Ito
/// integral operators. Constants C are unknown, so each report carries the
/// implied constant lhs/rhs and passes when it stays below a cap.
namespace fsde::verify {

inline constexpr double kNoCap = std::numeric_limits<double>::infinity();

/// Estimate identifiers, also used as report names.
inline constexpr const char* kFbf = "Fbf";
inline constexpr const char* kFbfh = "Fbfh";
inline constexpr const char* kGsigmaHf2 = "GsigmaHf2";
inline constexpr const char* kGHfh = "GHfh";
inline constexpr const char* kGWf = "GWf";
inline constexpr const char* kGsigmaWf2 = "GsigmaWf2";
inline constexpr const char* kGW2 = "GW2";

struct NamedPath {
    std::string name;
    SamplePath path;
};

/// Deterministic functions (zero, constant, t, t^2, sqrt t, sin, zigzag) plus
/// `fbm_paths` independent fBm paths drawn from the corpus substream of seed.
std::vector<NamedPath> make_path_corpus(const TimeGrid& grid, HurstParameter hurst, std::size_t fbm_paths,
                                        std::uint64_t seed);

/// a0 + sum_{k=1}^{4} (a_k cos(2 pi k t/T) + b_k sin(2 pi k t/T)) / k with
/// standard normal coefficients from the corpus substream (seed, index).
SamplePath random_smooth_path(const TimeGrid& grid, std::uint64_t seed, std::uint64_t index);

/// |int_0^T f dg| <= Lambda_alpha(g) ||f||_{alpha,1} over `trials` pairs of a
/// random smooth f and an fBm path g, both drawn from trial index i of seed.
std::vector<EstimateReport> audit_gfa1(const TimeGrid& grid, HurstParameter hurst, FracOrder alpha,
                                       std::size_t trials, std::uint64_t seed, double cap = 1.01);

/// Consecutive corpus entries as (f, h) pairs, plus (f, f) when with_identical.
std::vector<std::pair<NamedPath, NamedPath>> make_pairs(const std::vector<NamedPath>& corpus, bool with_identical);

/// Times at which every estimate is evaluated; the report keeps the one with
/// the largest implied constant. Fractions of the horizon.
inline const std::vector<double> kCheckpoints{0.25, 0.5, 0.75, 1.0};

/// F_t(f) = int_0^t b(s, f(s)) ds by the trapezoid rule, as a path.
SamplePath drift_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f);
/// G_t(f) = int_0^t sigma_H(s, f(s)) dB^H_s by left-point sums, as a path.
SamplePath fbm_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f, const SamplePath& bh);
/// int_0^t sigma_W(s, f(s)) dW_s by left-point (Ito) sums, as a path.
SamplePath ito_integral_path(const sde::CoefficientSet& coeffs, const SamplePath& f, const SamplePath& w);

/// (Fbf) ||F_t(f)||_a <= C (int_0^t |f(s)|/(t-s)^a ds + 1), and
/// (Fbfh) ||F_t(f)-F_t(h)||_a <= C int_0^t ||f(s)-h(s)||_a/(t-s)^a ds.
std::vector<EstimateReport> audit_drift_estimates(const std::vector<NamedPath>& corpus,
                                                  const std::vector<std::pair<NamedPath, NamedPath>>& pairs,
                                                  const sde::CoefficientSet& coeffs, AlphaParameter alpha,
                                                  const std::map<std::string, double>& caps = {});

/// (GsigmaHf2) ||G_t(f)||_a <= C L(B^H) int ((t-s)^{-2a} + s^{-a}) (1 + ||f(s)||_a) ds and
/// (GHfh) ||G_t(f)-G_t(h)||_a <= C L(B^H) int ((t-s)^{-2a} + s^{-a}) (1 + Df(s) + Dh(s)) ||f(s)-h(s)||_a ds,
/// with L = Lambda_alpha and D the delta seminorm. Requires 1-H < alpha < min(1/2, beta).
std::vector<EstimateReport> audit_fbm_integral_estimates(const std::vector<NamedPath>& corpus,
                                                         const std::vector<std::pair<NamedPath, NamedPath>>& pairs,
                                                         const sde::CoefficientSet& coeffs, const SamplePath& bh,
                                                         HurstParameter hurst, AlphaParameter alpha,
                                                         const std::map<std::string, double>& caps = {});

/// An adapted process u(t) = fn(t, W_t).
struct NamedProcess {
    std::string name;
    std::function<double(double, double)> fn;
};

/// zero, one, W_t, sin(W_t) + t, 1 + t W_t.
std::vector<NamedProcess> make_process_corpus();

struct ItoAuditConfig {
    TimeGrid grid = TimeGrid::uniform(1.0, 256);
    std::size_t mc_budget = 2000;
    std::uint64_t seed = 0;
};

/// (GWf) E||int_0^t u dW||_a^2 <= C int (t-s)^{-1/2-a} E u(s)^2 ds,
/// (GsigmaWf2) E||G_t(f)||_a^2 <= C int (t-s)^{-1/2-a} (1 + E||f(s)||_a^2) ds,
/// (GW2) E||G_t(f)-G_t(h)||_a^2 <= C int (t-s)^{-1/2-a} E|f(s)-h(s)|^2 ds,
/// with G_t(f) = int sigma_W(s, f(s)) dW. Expectations are Monte Carlo over W;
/// a standard error above 10% of lhs marks the report inconclusive.
std::vector<EstimateReport> audit_ito_estimates(const std::vector<NamedProcess>& corpus, bool with_identical,
                                                const sde::CoefficientSet& coeffs, AlphaParameter alpha,
                                                const ItoAuditConfig& config,
                                                const std::map<std::string, double>& caps = {});

/// Constants fixed on one seed set and asserted on a disjoint one.
struct CalibratedAudit {
    std::map<std::string, double> constants;  ///< max implied constant per estimate on set A
    double headroom = 2.0;
    std::vector<EstimateReport> reports;  ///< set B, checked against headroom * constant
    std::size_t failures = 0;
    std::size_t inconclusive = 0;

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Runs `trial` on every seed of set_a, takes the largest implied constant per
/// estimate name, then re-runs on set_b with cap = headroom * constant.
/// Throws ParameterError when the seed sets overlap.
CalibratedAudit calibrate_and_audit(const std::function<std::vector<EstimateReport>(std::uint64_t)>& trial,
                                    const std::vector<std::uint64_t>& set_a, const std::vector<std::uint64_t>& set_b,
                                    double headroom = 2.0);

/// The full estimate suite on one trial seed.
struct EstimateSuite {
    TimeGrid grid = TimeGrid::uniform(1.0, 256);
    HurstParameter hurst{0.75};
    AlphaParameter alpha{0.35};
    sde::CoefficientSet drift;      ///< supplies b
    sde::CoefficientSet fbm_coeffs; ///< supplies sigma_H
    sde::CoefficientSet ito_coeffs; ///< supplies sigma_W
    std::size_t fbm_paths = 3;
    std::size_t mc_budget = 2000;
    bool identical_pairs_only = false;
    std::vector<std::string> estimates{kFbf, kFbfh, kGsigmaHf2, kGHfh, kGWf, kGsigmaWf2, kGW2};

    /// Affine drift, time-Hoelder sigma_H and affine sigma_W from the registry.
    static EstimateSuite standard();
    [[nodiscard]] std::vector<EstimateReport> run(std::uint64_t seed,
                                                  const std::map<std::string, double>& caps = {}) const;
};

}  // namespace fsde::verify
