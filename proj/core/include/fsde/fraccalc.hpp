#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsde/path.hpp"
#include "fsde/report.hpp"
#include "fsde/types.hpp"

/// Riemann-Liouville integrals, Weyl derivatives and the generalized
/// Stieltjes integral on piecewise-linear paths.
///
/// The lower endpoint a is always the first grid node. Scalar operations act
/// on one component (default 0) of a path.
namespace fsde::fraccalc {

/// (1/Gamma(alpha)) int_0^x (x-y)^{alpha-1} f(y) dy at a grid node x > 0.
double rl_integral_left(const SamplePath& f, FracOrder alpha, double x, std::size_t comp = 0);
/// The left integral at every node, as a scalar path (0 at the first node).
SamplePath rl_integral_left_path(const SamplePath& f, FracOrder alpha, std::size_t comp = 0);

/// (1/Gamma(alpha)) int_x^b (y-x)^{alpha-1} f(y) dy for grid nodes x < b.
double rl_integral_right(const SamplePath& f, FracOrder alpha, double x, double b, std::size_t comp = 0);
/// The right integral with upper limit T at every node (0 at the last node).
SamplePath rl_integral_right_path(const SamplePath& f, FracOrder alpha, std::size_t comp = 0);

/// (1/Gamma(1-alpha)) [ f(x)/x^alpha + alpha int_0^x (f(x)-f(y))/(x-y)^{alpha+1} dy ].
double weyl_derivative_left(const SamplePath& f, FracOrder alpha, double x, std::size_t comp = 0);

/// How the right derivative treats g before differentiating.
enum class Centering {
    none,      ///< g itself
    endpoint,  ///< g_{b-}(y) = g(y) - g(b)
};

/// (1/Gamma(1-alpha)) [ g(x)/(b-x)^alpha + alpha int_x^b (g(x)-g(y))/(y-x)^{alpha+1} dy ]
/// applied to g_{b-} by default.
double weyl_derivative_right(const SamplePath& g, FracOrder alpha, double x, double b,
                             Centering centering = Centering::endpoint, std::size_t comp = 0);

/// Left derivative at every node strictly after the first; entry 0 is NaN.
std::vector<double> weyl_derivative_left_all(const SamplePath& f, FracOrder alpha, std::size_t comp = 0,
                                             bool centered = false);
/// Right derivative with upper limit node `last` at nodes 0..last-1; entry `last` is NaN.
std::vector<double> weyl_derivative_right_all(const SamplePath& g, FracOrder alpha, std::size_t last,
                                              Centering centering = Centering::endpoint, std::size_t comp = 0);

enum class Route { fractional_formula, riemann_stieltjes_sums };
std::string_view to_string(Route route);

struct IntegralResult {
    double value = 0.0;
    Route route = Route::fractional_formula;
    double mesh = 0.0;
    double est_error = 0.0;  ///< |value at mesh - value on every other node|
    double alpha = 0.0;      ///< order used by the fractional route

    [[nodiscard]] nlohmann::json to_json() const;
};

/// Which form of the fractional definition to evaluate.
enum class StieltjesForm {
    centered,  ///< D f_{0+} with boundary term f(0)(g(t) - g(0))
    plain,     ///< D f without boundary term
};

struct StieltjesOptions {
    std::optional<double> alpha;   ///< order of the derivative applied to f
    std::optional<double> lambda;  ///< declared Hoelder exponent of f
    std::optional<double> mu;      ///< declared Hoelder exponent of g
    StieltjesForm form = StieltjesForm::centered;
    bool check_window = true;
    bool estimate_error = true;
};

/// Admissible orders (1 - mu, lambda) for Hoelder exponents lambda, mu with
/// lambda + mu > 1. Declared exponents win; otherwise they are estimated when
/// the grid allows it. Returns nullopt when neither is possible.
struct AlphaWindow {
    double lower = 0.0;
    double upper = 1.0;
    bool estimated = false;
    [[nodiscard]] double midpoint() const { return 0.5 * (lower + upper); }
    [[nodiscard]] bool contains(double a) const { return lower < a && a < upper; }
};
std::optional<AlphaWindow> admissible_window(const SamplePath& f, const SamplePath& g, const StieltjesOptions& options,
                                             std::size_t comp_f = 0, std::size_t comp_g = 0);

/// int_0^t f dg = f(0)(g(t)-g(0)) - int_0^t D_{0+}^alpha f_{0+}(x) D_{t-}^{1-alpha} g_{t-}(x) dx.
///
/// The outer integral is the trapezoid rule over the nodes with zero limits
/// at both ends. Throws ParameterError when the order lies outside the
/// admissible window, or when no order was given and none can be derived.
IntegralResult stieltjes_integral_fractional(const SamplePath& f, const SamplePath& g, double t,
                                             const StieltjesOptions& options = {}, std::size_t comp_f = 0,
                                             std::size_t comp_g = 0);
IntegralResult stieltjes_integral_fractional(const SamplePath& f, const SamplePath& g, FracOrder alpha, double t);

/// Left-point sum sum_i f(t_i)(g(t_{i+1}) - g(t_i)) up to node t.
IntegralResult stieltjes_integral_rs_sums(const SamplePath& f, const SamplePath& g, double t, std::size_t comp_f = 0,
                                          std::size_t comp_g = 0);

/// |int_0^t f dg| <= Lambda_alpha(g) ||f||_{alpha,1}, with both norms taken on [0, t].
/// `cap` is the quadrature allowance on the constant 1.
EstimateReport bound_check_gfa1(const SamplePath& f, const SamplePath& g, FracOrder alpha, double t,
                                double cap = 1.01);

/// Nodes 0, 2, 4, ... plus the last node.
TimeGrid every_other_node(const TimeGrid& grid);

}  // namespace fsde::fraccalc
