#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsde/path.hpp"
#include "fsde/types.hpp"

/// Norms, seminorms and pathwise functionals of grid-sampled functions.
///
/// Paths are treated as piecewise linear between nodes. Every singular
/// integral is evaluated by product integration (see detail/kernel.hpp), so
/// results are exact for piecewise-linear data up to rounding. Vector-valued
/// paths use the Euclidean norm of each state or increment. Discrete sups
/// range over grid nodes only and are therefore lower bounds of the
/// continuous-time sups.
namespace fsde::fracnorms {

/// O(n^2) pairwise functionals refuse grids above this many steps unless the
/// caller raises the cap.
inline constexpr std::size_t kPairwiseStepCap = 4096;

/// Values above this are reported as +infinity by delta_seminorm.
inline constexpr double kOverflowGuard = 1e300;

struct PairwiseOptions {
    std::size_t step_cap = kPairwiseStepCap;
};

enum class NormKind {
    pointwise_alpha,
    alpha_infty,
    hoelder_mu,
    one_minus_alpha_infty,
    alpha_one,
    lambda_alpha,
    delta_seminorm,
};

std::string_view to_string(NormKind kind);

struct NormReport {
    NormKind kind = NormKind::alpha_infty;
    double value = 0.0;
    double parameter = 0.0;  ///< alpha or mu
    std::size_t n = 0;
    double horizon = 0.0;
    std::string diagnostic;

    /// {kind, alpha_or_mu, value, n, T} (+ diagnostic when non-empty).
    [[nodiscard]] nlohmann::json to_json() const;
};

/// |f(t)| + int_0^t |f(t) - f(s)| / (t-s)^{alpha+1} ds at a grid node t.
double pointwise_alpha_norm(const SamplePath& f, double t, AlphaParameter alpha);
double pointwise_alpha_norm_at(const SamplePath& f, std::size_t node, AlphaParameter alpha);
/// The pointwise norm at every node.
std::vector<double> pointwise_alpha_norms(const SamplePath& f, AlphaParameter alpha);

/// sup_t of the pointwise norm.
double alpha_infty_norm(const SamplePath& f, AlphaParameter alpha);

/// ||f||_inf + sup_{s<t} |f(t) - f(s)| / (t-s)^mu, 0 < mu <= 1.
double hoelder_norm(const SamplePath& g, double mu, PairwiseOptions options = {});

/// sup_{s<t} ( |g(t)-g(s)|/(t-s)^{1-alpha} + int_s^t |g(y)-g(s)|/(y-s)^{2-alpha} dy ).
double one_minus_alpha_infty_norm(const SamplePath& g, FracOrder alpha, PairwiseOptions options = {});

/// int_0^T |f(s)|/s^alpha ds + int_0^T int_0^s |f(s)-f(y)|/(s-y)^{alpha+1} dy ds.
double alpha_one_norm(const SamplePath& f, FracOrder alpha);

/// Lambda_alpha(g) = sup_{s<t} |D_{t-}^{1-alpha} g_{t-}(s)| / Gamma(1-alpha).
double lambda_alpha(const SamplePath& g, FracOrder alpha, PairwiseOptions options = {});

/// int_0^s |f(s) - f(r)|^delta / (s-r)^{alpha+1} dr, 0 < delta <= 1.
/// Divergent or overflowing values come back as +infinity.
double delta_seminorm(const SamplePath& f, double s, AlphaParameter alpha, double delta);
double delta_seminorm_at(const SamplePath& f, std::size_t node, AlphaParameter alpha, double delta);
std::vector<double> delta_seminorms(const SamplePath& f, AlphaParameter alpha, double delta);

/// Evaluates the functional named by kind over the whole path and wraps it
/// into a report. `parameter` is alpha (or mu for hoelder_mu); `delta` is only
/// read for delta_seminorm, which is evaluated at the last node.
NormReport evaluate(NormKind kind, const SamplePath& f, double parameter, double delta = 1.0);

}  // namespace fsde::fracnorms
