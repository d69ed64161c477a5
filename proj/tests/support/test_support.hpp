#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fsde/path.hpp"

namespace fsde::test {

inline bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(b), 1e-300); }

inline SamplePath fn_path(const TimeGrid& grid, const std::function<double(double)>& fn)
{
    return SamplePath::from_function(grid, fn);
}

inline SamplePath identity_path(const TimeGrid& grid)
{
    return fn_path(grid, [](double t) { return t; });
}

inline SamplePath constant_path(const TimeGrid& grid, double c)
{
    return fn_path(grid, [c](double) { return c; });
}

/// 0 = t_0 < ... < t_n = T with independent uniform cell widths in [0.5, 1.5].
inline TimeGrid jittered_grid(double horizon, std::size_t steps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> width(0.5, 1.5);
    std::vector<double> nodes{0.0};
    for (std::size_t i = 0; i < steps; ++i) nodes.push_back(nodes.back() + width(rng));
    const double scale = horizon / nodes.back();
    for (double& t : nodes) t *= scale;
    nodes.back() = horizon;
    return TimeGrid::from_nodes(std::move(nodes));
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased
    double std_error = 0.0;  ///< of the mean
};

inline Moments moments(const std::vector<double>& xs)
{
    Moments m;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) m.mean += x / n;
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean) / (n - 1.0);
    m.std_error = std::sqrt(m.variance / n);
    return m;
}

/// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = na * nb / (na + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("fsde-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace fsde::test
