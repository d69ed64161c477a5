#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

#include "fsde/grid.hpp"

namespace fsde::detail {

/// Weights of one grid cell for the product-integration rule
///
///     int_{u0}^{u0+w} N(u) u^{-p} du  ~=  near * N(u0) + far * N(u0+w)
///
/// where u is the distance to a singular anchor node and N is taken linear
/// across the cell. The rule is exact for piecewise-linear numerators: the
/// cell touching the anchor (u0 = 0) is integrated in closed form, every other
/// cell with 8-point Gauss-Legendre on a smooth integrand.
struct CellWeights {
    double near = 0.0;
    double far = 0.0;
};

/// For u0 = 0 and p >= 1 the near weight is infinite; it is returned as 0 and
/// callers must supply a numerator that vanishes at the anchor.
CellWeights power_cell_weights(double u0, double width, double p);

/// int_{u0}^{u0+w} (linear N)^e u^{-p} du for an arbitrary power e > 0 of the
/// numerator. Closed form on the anchor cell (where N(0) must be 0), Gauss
/// elsewhere. Returns +inf when the anchor-cell integral diverges (e <= p - 1).
double powered_cell_integral(double u0, double width, double n_near, double n_far, double e, double p);

/// Cell weights of u^{-p} for every (anchor, cell) pair of a grid. Uniform
/// grids share one cached table of unit-width entries per (p, n); other grids evaluate on demand.
class PowerKernel {
  public:
    PowerKernel(const TimeGrid& grid, double p);

    /// Cell between nodes `near` and `far` (adjacent), weights relative to `anchor`.
    [[nodiscard]] CellWeights cell(std::size_t anchor, std::size_t near, std::size_t far) const
    {
        if (uniform_) {
            const std::size_t j = near > anchor ? near - anchor : anchor - near;
            const CellWeights& u = (*table_)[j];
            return {u.near * scale_, u.far * scale_};
        }
        return power_cell_weights(std::abs(nodes_[near] - nodes_[anchor]), std::abs(nodes_[far] - nodes_[near]),
                                  p_);
    }

    /// int over [t_0, t_k] of N(s) (t_k - s)^{-p} ds for nodal values N.
    template <typename Numerator>
    [[nodiscard]] double integrate_left(std::size_t k, Numerator&& numer) const
    {
        double acc = 0.0;
        for (std::size_t i = k; i-- > 0;) {
            const CellWeights w = cell(k, i + 1, i);
            acc += w.near * numer(i + 1) + w.far * numer(i);
        }
        return acc;
    }

    /// int over [t_k, t_last] of N(s) (s - t_k)^{-p} ds for nodal values N.
    template <typename Numerator>
    [[nodiscard]] double integrate_right(std::size_t k, std::size_t last, Numerator&& numer) const
    {
        double acc = 0.0;
        for (std::size_t i = k; i < last; ++i) {
            const CellWeights w = cell(k, i, i + 1);
            acc += w.near * numer(i) + w.far * numer(i + 1);
        }
        return acc;
    }

    [[nodiscard]] double exponent() const noexcept { return p_; }

  private:
    double p_;
    bool uniform_;
    double scale_ = 1.0;
    std::shared_ptr<const std::vector<CellWeights>> table_;
    std::vector<double> nodes_;
};

}  // namespace fsde::detail
