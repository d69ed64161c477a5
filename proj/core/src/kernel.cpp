#include "fsde/detail/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

namespace fsde::detail {

namespace {

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
    std::array<double, 8> x;
    std::array<double, 8> w;
};

const GaussRule& gauss8()
{
    static const GaussRule rule = [] {
        constexpr std::array<double, 4> xs = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                              0.9602898564975363};
        constexpr std::array<double, 4> ws = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};
        GaussRule r{};
        for (std::size_t i = 0; i < 4; ++i) {
            r.x[2 * i] = 0.5 * (1.0 - xs[i]);
            r.x[2 * i + 1] = 0.5 * (1.0 + xs[i]);
            r.w[2 * i] = 0.5 * ws[i];
            r.w[2 * i + 1] = 0.5 * ws[i];
        }
        return r;
    }();
    return rule;
}

std::shared_ptr<const std::vector<CellWeights>> unit_table(double p, std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::pair<double, std::size_t>, std::shared_ptr<const std::vector<CellWeights>>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[{p, n}];
    if (!slot) {
        auto table = std::make_shared<std::vector<CellWeights>>(n);
        for (std::size_t j = 0; j < n; ++j) (*table)[j] = power_cell_weights(static_cast<double>(j), 1.0, p);
        slot = std::move(table);
    }
    return slot;
}

}  // namespace

CellWeights power_cell_weights(double u0, double width, double p)
{
    if (u0 <= 0.0) {
        const double scale = std::pow(width, 1.0 - p);
        const double far = scale / (2.0 - p);
        const double near = p < 1.0 ? scale / (1.0 - p) - far : 0.0;
        return {near, far};
    }
    const GaussRule& g = gauss8();
    CellWeights out;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        const double u = u0 + g.x[k] * width;
        const double kern = g.w[k] * width * std::pow(u, -p);
        out.near += (1.0 - g.x[k]) * kern;
        out.far += g.x[k] * kern;
    }
    return out;
}

double powered_cell_integral(double u0, double width, double n_near, double n_far, double e, double p)
{
    if (u0 <= 0.0) {
        // N(u) = n_far * u / width on the anchor cell.
        const double q = e - p + 1.0;
        if (n_far == 0.0) return 0.0;
        if (q <= 0.0) return std::numeric_limits<double>::infinity();
        return std::pow(n_far / width, e) * std::pow(width, q) / q;
    }
    const GaussRule& g = gauss8();
    double acc = 0.0;
    for (std::size_t k = 0; k < g.x.size(); ++k) {
        const double u = u0 + g.x[k] * width;
        const double numer = (1.0 - g.x[k]) * n_near + g.x[k] * n_far;
        acc += g.w[k] * width * std::pow(numer, e) * std::pow(u, -p);
    }
    return acc;
}

PowerKernel::PowerKernel(const TimeGrid& grid, double p) : p_(p), uniform_(grid.is_uniform())
{
    if (uniform_) {
        const std::size_t n = grid.steps();
        scale_ = std::pow(grid.horizon() / static_cast<double>(n), 1.0 - p);
        table_ = unit_table(p, n);
    } else {
        nodes_.assign(grid.nodes().begin(), grid.nodes().end());
    }
}

}  // namespace fsde::detail
