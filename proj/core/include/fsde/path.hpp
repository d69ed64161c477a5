#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "fsde/grid.hpp"

namespace fsde {

/// Row-major so that one row is the state at one grid node.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// A d-dimensional function of time sampled at the nodes of a TimeGrid.
class SamplePath {
  public:
    SamplePath(TimeGrid grid, Matrix values);

    /// Scalar path t -> fn(t).
    static SamplePath from_function(const TimeGrid& grid, const std::function<double(double)>& fn);
    static SamplePath zeros(const TimeGrid& grid, std::size_t dim);

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }

    [[nodiscard]] double operator()(std::size_t node, std::size_t comp = 0) const
    {
        return values_(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(comp));
    }
    [[nodiscard]] Vector at(std::size_t node) const
    {
        return values_.row(static_cast<Eigen::Index>(node)).transpose();
    }
    /// Euclidean distance between the states at two nodes.
    [[nodiscard]] double distance(std::size_t i, std::size_t j) const
    {
        return (values_.row(static_cast<Eigen::Index>(i)) - values_.row(static_cast<Eigen::Index>(j))).norm();
    }
    [[nodiscard]] double magnitude(std::size_t i) const
    {
        return values_.row(static_cast<Eigen::Index>(i)).norm();
    }

    [[nodiscard]] SamplePath component(std::size_t comp) const;
    /// Values at the nodes of a coarser grid whose nodes all belong to this grid.
    [[nodiscard]] SamplePath restrict_to(const TimeGrid& coarse) const;
    /// Piecewise-linear interpolation onto an arbitrary grid with the same horizon.
    [[nodiscard]] SamplePath interpolate_to(const TimeGrid& target) const;
    /// Nodes i0..i1, re-based so that t_{i0} becomes time 0.
    [[nodiscard]] SamplePath slice(std::size_t i0, std::size_t i1) const;
    /// Subtracts the value at node 0 from every row.
    [[nodiscard]] SamplePath centered() const;
    /// Applies fn to each row.
    [[nodiscard]] SamplePath map(const std::function<Vector(double, const Vector&)>& fn) const;

  private:
    TimeGrid grid_;
    Matrix values_;
};

SamplePath operator+(const SamplePath& a, const SamplePath& b);
SamplePath operator-(const SamplePath& a, const SamplePath& b);
SamplePath operator*(double scale, const SamplePath& a);

/// Sup over nodes of the Euclidean distance; paths must share a grid.
double sup_distance(const SamplePath& a, const SamplePath& b);

}  // namespace fsde
