#include "fsde/path.hpp"

#include <algorithm>
#include <string>

#include "fsde/errors.hpp"

namespace fsde {

namespace {

void require_same_grid(const SamplePath& a, const SamplePath& b)
{
    if (!(a.grid() == b.grid())) throw DomainError("paths are sampled on different grids");
    if (a.dim() != b.dim()) throw DomainError("paths have different dimensions");
}

}  // namespace

SamplePath::SamplePath(TimeGrid grid, Matrix values) : grid_(std::move(grid)), values_(std::move(values))
{
    if (static_cast<std::size_t>(values_.rows()) != grid_.size()) {
        throw DomainError("path needs one row per grid node: " + std::to_string(values_.rows()) +
                          " rows for " + std::to_string(grid_.size()) + " nodes");
    }
    if (values_.cols() < 1) throw DomainError("path dimension must be at least 1");
}

SamplePath SamplePath::from_function(const TimeGrid& grid, const std::function<double(double)>& fn)
{
    Matrix values(static_cast<Eigen::Index>(grid.size()), 1);
    for (std::size_t i = 0; i < grid.size(); ++i) values(static_cast<Eigen::Index>(i), 0) = fn(grid[i]);
    return SamplePath(grid, std::move(values));
}

SamplePath SamplePath::zeros(const TimeGrid& grid, std::size_t dim)
{
    return SamplePath(grid, Matrix::Zero(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(dim)));
}

SamplePath SamplePath::component(std::size_t comp) const
{
    if (comp >= dim()) throw DomainError("component index out of range");
    return SamplePath(grid_, values_.col(static_cast<Eigen::Index>(comp)));
}

SamplePath SamplePath::restrict_to(const TimeGrid& coarse) const
{
    Matrix out(static_cast<Eigen::Index>(coarse.size()), values_.cols());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        auto idx = grid_.find_node(coarse[i]);
        if (!idx) throw UnsupportedGridError("restriction target is not a subgrid of the path grid");
        out.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(*idx));
    }
    return SamplePath(coarse, std::move(out));
}

SamplePath SamplePath::interpolate_to(const TimeGrid& target) const
{
    Matrix out(static_cast<Eigen::Index>(target.size()), values_.cols());
    const auto nodes = grid_.nodes();
    for (std::size_t i = 0; i < target.size(); ++i) {
        const double t = std::min(target[i], grid_.horizon());
        const std::size_t k = grid_.cell_index(t);
        const auto row = static_cast<Eigen::Index>(i);
        if (k + 1 >= grid_.size()) {
            out.row(row) = values_.row(static_cast<Eigen::Index>(grid_.size() - 1));
            continue;
        }
        const double w = (t - nodes[k]) / (nodes[k + 1] - nodes[k]);
        out.row(row) = (1.0 - w) * values_.row(static_cast<Eigen::Index>(k)) +
                       w * values_.row(static_cast<Eigen::Index>(k + 1));
    }
    return SamplePath(target, std::move(out));
}

SamplePath SamplePath::slice(std::size_t i0, std::size_t i1) const
{
    TimeGrid sub = grid_.slice(i0, i1);
    Matrix out = values_.middleRows(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(i1 - i0 + 1));
    return SamplePath(std::move(sub), std::move(out));
}

SamplePath SamplePath::centered() const
{
    Matrix out = values_.rowwise() - values_.row(0);
    return SamplePath(grid_, std::move(out));
}

SamplePath SamplePath::map(const std::function<Vector(double, const Vector&)>& fn) const
{
    Vector first = fn(grid_[0], at(0));
    Matrix out(values_.rows(), first.size());
    out.row(0) = first.transpose();
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = fn(grid_[i], at(i)).transpose();
    }
    return SamplePath(grid_, std::move(out));
}

SamplePath operator+(const SamplePath& a, const SamplePath& b)
{
    require_same_grid(a, b);
    return SamplePath(a.grid(), a.values() + b.values());
}

SamplePath operator-(const SamplePath& a, const SamplePath& b)
{
    require_same_grid(a, b);
    return SamplePath(a.grid(), a.values() - b.values());
}

SamplePath operator*(double scale, const SamplePath& a)
{
    return SamplePath(a.grid(), scale * a.values());
}

double sup_distance(const SamplePath& a, const SamplePath& b)
{
    require_same_grid(a, b);
    return (a.values() - b.values()).rowwise().norm().maxCoeff();
}

}  // namespace fsde
