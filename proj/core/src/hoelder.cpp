#include "fsde/hoelder.hpp"

#include <algorithm>
#include <cmath>

#include "fsde/errors.hpp"
#include "fsde/report.hpp"

namespace fsde::verify {

HoelderEstimate estimate_hoelder(const SamplePath& path)
{
    const TimeGrid& grid = path.grid();
    const std::size_t n = grid.steps();
    if (n < kHoelderMinSteps) throw DomainError("Hoelder estimation needs at least 256 steps");
    if (!grid.is_uniform()) throw UnsupportedGridError("Hoelder estimation needs a uniform grid");

    HoelderEstimate out;
    std::vector<double> logs_lag;
    std::vector<double> logs_scale;
    std::vector<double> weights;
    for (std::size_t stride = 4; 4 * stride <= n; stride *= 2) {
        const std::size_t count = n / stride;
        const std::size_t groups = count / 4;
        double acc = 0.0;
        bool zero = false;
        for (std::size_t g = 0; g < groups; ++g) {
            double peak = 0.0;
            for (std::size_t k = 4 * g; k < 4 * g + 4; ++k) {
                peak = std::max(peak, path.distance((k + 1) * stride, k * stride));
            }
            zero = zero || peak == 0.0;
            acc += peak > 0.0 ? std::log(peak) : 0.0;
        }
        const double lag = grid.mesh() * static_cast<double>(stride);
        out.lags.push_back(lag);
        out.scales.push_back(zero ? 0.0 : std::exp(acc / static_cast<double>(groups)));
        out.weights.push_back(static_cast<double>(groups));
    }
    const bool flat = std::all_of(out.scales.begin(), out.scales.end(), [](double s) { return s == 0.0; });
    if (flat || out.lags.size() < 2) {
        out.degenerate = true;
        return out;
    }
    for (std::size_t i = 0; i < out.lags.size(); ++i) {
        if (out.scales[i] <= 0.0) continue;
        logs_lag.push_back(std::log(out.lags[i]));
        logs_scale.push_back(std::log(out.scales[i]));
        weights.push_back(out.weights[i]);
    }
    if (logs_lag.size() < 2) {
        out.degenerate = true;
        return out;
    }
    const LinearFit fit = fit_line(logs_lag, logs_scale, weights);
    out.exponent = fit.slope;
    out.r2 = fit.r2;
    return out;
}

}  // namespace fsde::verify
