#pragma once

#include <cstddef>
#include <vector>

#include "fsde/path.hpp"

namespace fsde::verify {

inline constexpr std::size_t kHoelderMinSteps = 256;

struct HoelderEstimate {
    double exponent = 1.0;
    double r2 = 1.0;
    bool degenerate = false;  ///< constant path; exponent reported as 1
    std::vector<double> lags;
    std::vector<double> scales;   ///< geometric mean of the group-maximum increments per lag
    std::vector<double> weights;  ///< number of groups per lag
};

/// Log-log slope of the increment scale against dyadic lags in [4 mesh, T/4].
///
/// At each lag the path is cut into non-overlapping increments, these are
/// grouped four at a time and the logs of the group maxima averaged. For a
/// self-similar process with stationary increments every lag then sees the
/// same statistic shifted by H log(lag). Lags are weighted by group count.
/// Needs a uniform grid with at least 256 steps.
HoelderEstimate estimate_hoelder(const SamplePath& path);

inline double hoelder_exponent_estimate(const SamplePath& path) { return estimate_hoelder(path).exponent; }

}  // namespace fsde::verify
