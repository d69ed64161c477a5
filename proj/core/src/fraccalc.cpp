#include "fsde/fraccalc.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fsde/detail/kernel.hpp"
#include "fsde/errors.hpp"
#include "fsde/fracnorms.hpp"
#include "fsde/hoelder.hpp"

namespace fsde::fraccalc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_comp(const SamplePath& f, std::size_t comp)
{
    if (comp >= f.dim()) throw DomainError("component index out of range");
}

void check_same_grid(const SamplePath& f, const SamplePath& g)
{
    if (!(f.grid() == g.grid())) throw DomainError("paths must share a grid");
}

double left_derivative_at(const SamplePath& f, const detail::PowerKernel& kernel, double alpha, std::size_t k,
                          std::size_t comp, double shift)
{
    const double fk = f(k, comp);
    const double tail = kernel.integrate_left(k, [&](std::size_t i) { return fk - f(i, comp); });
    return ((fk - shift) / std::pow(f.grid()[k], alpha) + alpha * tail) / std::tgamma(1.0 - alpha);
}

double right_derivative_at(const SamplePath& g, const detail::PowerKernel& kernel, double alpha, std::size_t k,
                           std::size_t last, std::size_t comp, double shift)
{
    const double gk = g(k, comp);
    const double tail = kernel.integrate_right(k, last, [&](std::size_t i) { return gk - g(i, comp); });
    const double gap = g.grid()[last] - g.grid()[k];
    return ((gk - shift) / std::pow(gap, alpha) + alpha * tail) / std::tgamma(1.0 - alpha);
}

double fractional_value(const SamplePath& f, const SamplePath& g, double alpha, StieltjesForm form,
                        std::size_t comp_f, std::size_t comp_g)
{
    const std::size_t last = f.size() - 1;
    if (last == 0) return 0.0;
    const auto nodes = f.grid().nodes();
    const bool centered = form == StieltjesForm::centered;
    const auto left = weyl_derivative_left_all(f, FracOrder(alpha), comp_f, centered);
    const auto right = weyl_derivative_right_all(g, FracOrder(1.0 - alpha), last, Centering::endpoint, comp_g);

    // Endpoint limits of the product are zero, except the x^{-alpha}
    // singularity of the uncentered derivative at 0, which is integrated
    // on the first cell as c x^{-alpha}.
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t k = 1; k <= last; ++k) {
        const double cur = k == last ? 0.0 : left[k] * right[k];
        const double h = nodes[k] - nodes[k - 1];
        if (k == 1 && !centered && last > 1) {
            acc += cur * h / (1.0 - alpha);
        } else {
            acc += 0.5 * (prev + cur) * h;
        }
        prev = cur;
    }
    const double boundary = centered ? f(0, comp_f) * (g(last, comp_g) - g(0, comp_g)) : 0.0;
    return boundary - acc;
}

double rs_value(const SamplePath& f, const SamplePath& g, std::size_t comp_f, std::size_t comp_g)
{
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) acc += f(i, comp_f) * (g(i + 1, comp_g) - g(i, comp_g));
    return acc;
}

std::optional<double> exponent_of(const SamplePath& p, std::size_t comp, std::optional<double> declared)
{
    if (declared) return declared;
    if (p.grid().steps() < verify::kHoelderMinSteps || !p.grid().is_uniform()) return std::nullopt;
    return std::min(1.0, verify::estimate_hoelder(p.component(comp)).exponent);
}

}  // namespace

TimeGrid every_other_node(const TimeGrid& grid)
{
    std::vector<double> nodes;
    for (std::size_t i = 0; i < grid.size(); i += 2) nodes.push_back(grid[i]);
    if (grid.steps() % 2 == 1) nodes.push_back(grid.horizon());
    return TimeGrid::from_nodes(std::move(nodes));
}

double rl_integral_left(const SamplePath& f, FracOrder alpha, double x, std::size_t comp)
{
    check_comp(f, comp);
    const std::size_t k = f.grid().node_index(x);
    if (k == 0) throw DomainError("fractional integral needs x > a");
    const detail::PowerKernel kernel(f.grid(), 1.0 - alpha.value());
    return kernel.integrate_left(k, [&](std::size_t i) { return f(i, comp); }) / std::tgamma(alpha.value());
}

SamplePath rl_integral_left_path(const SamplePath& f, FracOrder alpha, std::size_t comp)
{
    check_comp(f, comp);
    const detail::PowerKernel kernel(f.grid(), 1.0 - alpha.value());
    const double scale = 1.0 / std::tgamma(alpha.value());
    Matrix out(static_cast<Eigen::Index>(f.size()), 1);
    out(0, 0) = 0.0;
    for (std::size_t k = 1; k < f.size(); ++k) {
        out(static_cast<Eigen::Index>(k), 0) = scale * kernel.integrate_left(k, [&](std::size_t i) { return f(i, comp); });
    }
    return {f.grid(), std::move(out)};
}

double rl_integral_right(const SamplePath& f, FracOrder alpha, double x, double b, std::size_t comp)
{
    check_comp(f, comp);
    const std::size_t k = f.grid().node_index(x);
    const std::size_t last = f.grid().node_index(b);
    if (k >= last) throw DomainError("fractional integral needs x < b");
    const detail::PowerKernel kernel(f.grid(), 1.0 - alpha.value());
    return kernel.integrate_right(k, last, [&](std::size_t i) { return f(i, comp); }) / std::tgamma(alpha.value());
}

SamplePath rl_integral_right_path(const SamplePath& f, FracOrder alpha, std::size_t comp)
{
    check_comp(f, comp);
    const detail::PowerKernel kernel(f.grid(), 1.0 - alpha.value());
    const double scale = 1.0 / std::tgamma(alpha.value());
    const std::size_t last = f.size() - 1;
    Matrix out(static_cast<Eigen::Index>(f.size()), 1);
    out(static_cast<Eigen::Index>(last), 0) = 0.0;
    for (std::size_t k = 0; k < last; ++k) {
        out(static_cast<Eigen::Index>(k), 0) =
            scale * kernel.integrate_right(k, last, [&](std::size_t i) { return f(i, comp); });
    }
    return {f.grid(), std::move(out)};
}

double weyl_derivative_left(const SamplePath& f, FracOrder alpha, double x, std::size_t comp)
{
    check_comp(f, comp);
    const std::size_t k = f.grid().node_index(x);
    if (k == 0) throw DomainError("Weyl derivative is singular at x = a");
    const detail::PowerKernel kernel(f.grid(), alpha.value() + 1.0);
    return left_derivative_at(f, kernel, alpha.value(), k, comp, 0.0);
}

double weyl_derivative_right(const SamplePath& g, FracOrder alpha, double x, double b, Centering centering,
                             std::size_t comp)
{
    check_comp(g, comp);
    const std::size_t k = g.grid().node_index(x);
    const std::size_t last = g.grid().node_index(b);
    if (k == last) throw DomainError("Weyl derivative is singular at x = b");
    if (k > last) throw DomainError("right Weyl derivative needs x < b");
    const detail::PowerKernel kernel(g.grid(), alpha.value() + 1.0);
    const double shift = centering == Centering::endpoint ? g(last, comp) : 0.0;
    return right_derivative_at(g, kernel, alpha.value(), k, last, comp, shift);
}

std::vector<double> weyl_derivative_left_all(const SamplePath& f, FracOrder alpha, std::size_t comp, bool centered)
{
    check_comp(f, comp);
    const detail::PowerKernel kernel(f.grid(), alpha.value() + 1.0);
    const double shift = centered ? f(0, comp) : 0.0;
    std::vector<double> out(f.size(), kNaN);
    for (std::size_t k = 1; k < f.size(); ++k) out[k] = left_derivative_at(f, kernel, alpha.value(), k, comp, shift);
    return out;
}

std::vector<double> weyl_derivative_right_all(const SamplePath& g, FracOrder alpha, std::size_t last,
                                              Centering centering, std::size_t comp)
{
    check_comp(g, comp);
    if (last >= g.size()) throw NodeError("upper node out of range");
    const detail::PowerKernel kernel(g.grid(), alpha.value() + 1.0);
    const double shift = centering == Centering::endpoint ? g(last, comp) : 0.0;
    std::vector<double> out(last + 1, kNaN);
    for (std::size_t k = 0; k < last; ++k) out[k] = right_derivative_at(g, kernel, alpha.value(), k, last, comp, shift);
    return out;
}

std::string_view to_string(Route route)
{
    return route == Route::fractional_formula ? "fractional_formula" : "riemann_stieltjes_sums";
}

nlohmann::json IntegralResult::to_json() const
{
    return {{"value", json_number(value)},
            {"route", to_string(route)},
            {"mesh", mesh},
            {"est_error", json_number(est_error)}};
}

std::optional<AlphaWindow> admissible_window(const SamplePath& f, const SamplePath& g, const StieltjesOptions& options,
                                             std::size_t comp_f, std::size_t comp_g)
{
    const auto lambda = exponent_of(f, comp_f, options.lambda);
    const auto mu = exponent_of(g, comp_g, options.mu);
    if (!lambda || !mu) return std::nullopt;
    AlphaWindow w;
    w.lower = std::max(0.0, 1.0 - *mu);
    w.upper = std::min(1.0, *lambda);
    w.estimated = !options.lambda || !options.mu;
    return w;
}

IntegralResult stieltjes_integral_fractional(const SamplePath& f, const SamplePath& g, double t,
                                             const StieltjesOptions& options, std::size_t comp_f,
                                             std::size_t comp_g)
{
    check_same_grid(f, g);
    check_comp(f, comp_f);
    check_comp(g, comp_g);
    const std::size_t last = f.grid().node_index(t);

    IntegralResult result;
    result.route = Route::fractional_formula;
    if (last == 0) return result;

    const SamplePath fp = f.slice(0, last);
    const SamplePath gp = g.slice(0, last);
    result.mesh = fp.grid().mesh();

    std::optional<AlphaWindow> window;
    if (options.check_window || !options.alpha) window = admissible_window(fp, gp, options, comp_f, comp_g);
    double alpha = 0.0;
    if (options.alpha) {
        alpha = *options.alpha;
        if (options.check_window && window && !window->contains(alpha)) {
            throw ParameterError("alpha = " + std::to_string(alpha) + " lies outside the admissible window (" +
                                 std::to_string(window->lower) + ", " + std::to_string(window->upper) + ")");
        }
    } else {
        if (!window) {
            throw ParameterError("no alpha given and the Hoelder classes are neither declared nor estimable");
        }
        if (!(window->lower < window->upper)) {
            throw ParameterError("Hoelder exponents do not sum above 1; no admissible alpha");
        }
        alpha = window->midpoint();
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
    result.alpha = alpha;
    result.value = fractional_value(fp, gp, alpha, options.form, comp_f, comp_g);

    if (options.estimate_error && last >= 4) {
        const TimeGrid coarse = every_other_node(fp.grid());
        const double v2 =
            fractional_value(fp.restrict_to(coarse), gp.restrict_to(coarse), alpha, options.form, comp_f, comp_g);
        result.est_error = std::abs(result.value - v2);
    }
    return result;
}

IntegralResult stieltjes_integral_fractional(const SamplePath& f, const SamplePath& g, FracOrder alpha, double t)
{
    StieltjesOptions options;
    options.alpha = alpha.value();
    options.check_window = false;
    return stieltjes_integral_fractional(f, g, t, options);
}

IntegralResult stieltjes_integral_rs_sums(const SamplePath& f, const SamplePath& g, double t, std::size_t comp_f,
                                          std::size_t comp_g)
{
    check_same_grid(f, g);
    check_comp(f, comp_f);
    check_comp(g, comp_g);
    const std::size_t last = f.grid().node_index(t);
    IntegralResult result;
    result.route = Route::riemann_stieltjes_sums;
    if (last == 0) return result;
    const SamplePath fp = f.slice(0, last);
    const SamplePath gp = g.slice(0, last);
    result.mesh = fp.grid().mesh();
    result.value = rs_value(fp, gp, comp_f, comp_g);
    if (last >= 2) {
        const TimeGrid coarse = every_other_node(fp.grid());
        result.est_error = std::abs(result.value - rs_value(fp.restrict_to(coarse), gp.restrict_to(coarse), comp_f, comp_g));
    }
    return result;
}

EstimateReport bound_check_gfa1(const SamplePath& f, const SamplePath& g, FracOrder alpha, double t, double cap)
{
    check_same_grid(f, g);
    const std::size_t last = f.grid().node_index(t);
    nlohmann::json meta{{"alpha", alpha.value()}, {"t", t}, {"n", f.grid().steps()}};
    if (last == 0) return EstimateReport::make("Gfa1", 0.0, 0.0, cap, std::move(meta));

    StieltjesOptions options;
    options.alpha = alpha.value();
    options.check_window = false;
    options.estimate_error = false;
    const double lhs = std::abs(stieltjes_integral_fractional(f, g, t, options).value);

    const SamplePath fp = f.slice(0, last);
    const SamplePath gp = g.slice(0, last);
    const double lam = fracnorms::lambda_alpha(gp, alpha);
    const double norm = fracnorms::alpha_one_norm(fp, alpha);
    meta["lambda_alpha"] = lam;
    meta["alpha_one_norm"] = norm;
    return EstimateReport::make("Gfa1", lhs, lam * norm, cap, std::move(meta));
}

}  // namespace fsde::fraccalc
