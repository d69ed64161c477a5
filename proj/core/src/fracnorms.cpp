#include "fsde/fracnorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsde/detail/kernel.hpp"
#include "fsde/errors.hpp"

namespace fsde::fracnorms {

namespace {

// Raw row access; avoids Eigen temporaries in O(n^2) loops.
class Rows {
  public:
    explicit Rows(const SamplePath& p) : data_(p.values().data()), dim_(p.dim()) {}

    [[nodiscard]] double dist(std::size_t i, std::size_t j) const
    {
        const double* a = data_ + i * dim_;
        const double* b = data_ + j * dim_;
        if (dim_ == 1) return std::abs(a[0] - b[0]);
        double acc = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
        return std::sqrt(acc);
    }
    [[nodiscard]] double norm(std::size_t i) const
    {
        const double* a = data_ + i * dim_;
        if (dim_ == 1) return std::abs(a[0]);
        double acc = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) acc += a[c] * a[c];
        return std::sqrt(acc);
    }
    [[nodiscard]] const double* row(std::size_t i) const { return data_ + i * dim_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }

  private:
    const double* data_;
    std::size_t dim_;
};

void check_cap(const SamplePath& p, PairwiseOptions options)
{
    if (p.grid().steps() > options.step_cap) {
        throw CapacityError("pairwise functional limited to " + std::to_string(options.step_cap) +
                            " steps; grid has " + std::to_string(p.grid().steps()));
    }
}

double integral_term(const detail::PowerKernel& kernel, const Rows& rows, std::size_t k)
{
    return kernel.integrate_left(k, [&](std::size_t i) { return rows.dist(k, i); });
}

double delta_at(const SamplePath& f, const Rows& rows, std::size_t k, double alpha, double delta)
{
    const auto nodes = f.grid().nodes();
    const double p = alpha + 1.0;
    double acc = 0.0;
    for (std::size_t i = k; i-- > 0;) {
        acc += detail::powered_cell_integral(nodes[k] - nodes[i + 1], nodes[i + 1] - nodes[i], rows.dist(k, i + 1),
                                             rows.dist(k, i), delta, p);
    }
    return acc > kOverflowGuard ? std::numeric_limits<double>::infinity() : acc;
}

void check_delta(double delta)
{
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0,1]");
}

}  // namespace

std::string_view to_string(NormKind kind)
{
    switch (kind) {
    case NormKind::pointwise_alpha: return "pointwise_alpha";
    case NormKind::alpha_infty: return "alpha_infty";
    case NormKind::hoelder_mu: return "hoelder_mu";
    case NormKind::one_minus_alpha_infty: return "one_minus_alpha_infty";
    case NormKind::alpha_one: return "alpha_one";
    case NormKind::lambda_alpha: return "lambda_alpha";
    case NormKind::delta_seminorm: return "delta_seminorm";
    }
    return "unknown";
}

nlohmann::json NormReport::to_json() const
{
    nlohmann::json j{{"kind", to_string(kind)}, {"alpha_or_mu", parameter}, {"value", value}, {"n", n}, {"T", horizon}};
    if (!std::isfinite(value)) j["value"] = "inf";
    if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
    return j;
}

double pointwise_alpha_norm_at(const SamplePath& f, std::size_t node, AlphaParameter alpha)
{
    if (node >= f.size()) throw NodeError("node index out of range");
    const Rows rows(f);
    if (node == 0) return rows.norm(0);
    const detail::PowerKernel kernel(f.grid(), alpha.value() + 1.0);
    return rows.norm(node) + integral_term(kernel, rows, node);
}

double pointwise_alpha_norm(const SamplePath& f, double t, AlphaParameter alpha)
{
    return pointwise_alpha_norm_at(f, f.grid().node_index(t), alpha);
}

std::vector<double> pointwise_alpha_norms(const SamplePath& f, AlphaParameter alpha)
{
    const Rows rows(f);
    const detail::PowerKernel kernel(f.grid(), alpha.value() + 1.0);
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = rows.norm(k) + integral_term(kernel, rows, k);
    return out;
}

double alpha_infty_norm(const SamplePath& f, AlphaParameter alpha)
{
    const auto norms = pointwise_alpha_norms(f, alpha);
    return *std::max_element(norms.begin(), norms.end());
}

double hoelder_norm(const SamplePath& g, double mu, PairwiseOptions options)
{
    if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("Hoelder exponent must lie in (0,1]");
    check_cap(g, options);
    const Rows rows(g);
    const auto nodes = g.grid().nodes();
    const std::size_t n = g.size();
    double sup_abs = 0.0;
    double sup_ratio = 0.0;
    std::vector<double> lag_pow;
    if (g.grid().is_uniform()) {
        lag_pow.resize(n);
        for (std::size_t j = 1; j < n; ++j) lag_pow[j] = std::pow(g.grid().mesh() * static_cast<double>(j), mu);
    }
    for (std::size_t i = 0; i < n; ++i) {
        sup_abs = std::max(sup_abs, rows.norm(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const double denom = lag_pow.empty() ? std::pow(nodes[j] - nodes[i], mu) : lag_pow[j - i];
            sup_ratio = std::max(sup_ratio, rows.dist(i, j) / denom);
        }
    }
    return sup_abs + sup_ratio;
}

double one_minus_alpha_infty_norm(const SamplePath& g, FracOrder alpha, PairwiseOptions options)
{
    check_cap(g, options);
    const Rows rows(g);
    const auto nodes = g.grid().nodes();
    const std::size_t n = g.size();
    const double a = alpha.value();
    const detail::PowerKernel kernel(g.grid(), 2.0 - a);
    double sup = 0.0;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        double running = 0.0;
        for (std::size_t t = s + 1; t < n; ++t) {
            const detail::CellWeights w = kernel.cell(s, t - 1, t);
            running += w.near * rows.dist(t - 1, s) + w.far * rows.dist(t, s);
            const double lead = rows.dist(t, s) / std::pow(nodes[t] - nodes[s], 1.0 - a);
            sup = std::max(sup, lead + running);
        }
    }
    return sup;
}

double alpha_one_norm(const SamplePath& f, FracOrder alpha)
{
    const Rows rows(f);
    const std::size_t n = f.size();
    const auto nodes = f.grid().nodes();
    const double a = alpha.value();

    const detail::PowerKernel weight(f.grid(), a);
    const double first = weight.integrate_right(0, n - 1, [&](std::size_t i) { return rows.norm(i); });

    const detail::PowerKernel kernel(f.grid(), a + 1.0);
    double second = 0.0;
    double prev = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double inner = integral_term(kernel, rows, k);
        second += 0.5 * (prev + inner) * (nodes[k] - nodes[k - 1]);
        prev = inner;
    }
    return first + second;
}

double lambda_alpha(const SamplePath& g, FracOrder alpha, PairwiseOptions options)
{
    check_cap(g, options);
    const Rows rows(g);
    const auto nodes = g.grid().nodes();
    const std::size_t n = g.size();
    const std::size_t dim = g.dim();
    const double a = alpha.value();
    const double order = 1.0 - a;  // derivative order
    const detail::PowerKernel kernel(g.grid(), order + 1.0);
    const double scale = 1.0 / (std::tgamma(1.0 - a) * std::tgamma(a));

    std::vector<double> running(dim);
    std::vector<double> value(dim);
    double sup = 0.0;
    for (std::size_t s = 0; s + 1 < n; ++s) {
        std::fill(running.begin(), running.end(), 0.0);
        const double* gs = rows.row(s);
        for (std::size_t t = s + 1; t < n; ++t) {
            const detail::CellWeights w = kernel.cell(s, t - 1, t);
            const double* g0 = rows.row(t - 1);
            const double* g1 = rows.row(t);
            const double lead = std::pow(nodes[t] - nodes[s], -order);
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                running[c] += w.near * (gs[c] - g0[c]) + w.far * (gs[c] - g1[c]);
                value[c] = (gs[c] - g1[c]) * lead + order * running[c];
                sq += value[c] * value[c];
            }
            sup = std::max(sup, std::sqrt(sq));
        }
    }
    return scale * sup;
}

double delta_seminorm_at(const SamplePath& f, std::size_t node, AlphaParameter alpha, double delta)
{
    check_delta(delta);
    if (node >= f.size()) throw NodeError("node index out of range");
    return delta_at(f, Rows(f), node, alpha.value(), delta);
}

double delta_seminorm(const SamplePath& f, double s, AlphaParameter alpha, double delta)
{
    return delta_seminorm_at(f, f.grid().node_index(s), alpha, delta);
}

std::vector<double> delta_seminorms(const SamplePath& f, AlphaParameter alpha, double delta)
{
    check_delta(delta);
    const Rows rows(f);
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = delta_at(f, rows, k, alpha.value(), delta);
    return out;
}

NormReport evaluate(NormKind kind, const SamplePath& f, double parameter, double delta)
{
    NormReport report;
    report.kind = kind;
    report.parameter = parameter;
    report.n = f.grid().steps();
    report.horizon = f.grid().horizon();
    switch (kind) {
    case NormKind::pointwise_alpha:
        report.value = pointwise_alpha_norm_at(f, f.size() - 1, AlphaParameter(parameter));
        break;
    case NormKind::alpha_infty: report.value = alpha_infty_norm(f, AlphaParameter(parameter)); break;
    case NormKind::hoelder_mu: report.value = hoelder_norm(f, parameter); break;
    case NormKind::one_minus_alpha_infty: report.value = one_minus_alpha_infty_norm(f, FracOrder(parameter)); break;
    case NormKind::alpha_one: report.value = alpha_one_norm(f, FracOrder(parameter)); break;
    case NormKind::lambda_alpha: report.value = lambda_alpha(f, FracOrder(parameter)); break;
    case NormKind::delta_seminorm:
        report.value = delta_seminorm_at(f, f.size() - 1, AlphaParameter(parameter), delta);
        if (!std::isfinite(report.value)) {
            report.diagnostic = "delta seminorm diverges or exceeds the 1e300 overflow guard";
        }
        break;
    }
    return report;
}

}  // namespace fsde::fracnorms
