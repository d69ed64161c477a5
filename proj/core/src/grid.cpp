#include "fsde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fsde/errors.hpp"

namespace fsde {

namespace {

constexpr double kNodeTolerance = 1e-12;
constexpr double kUniformTolerance = 1e-9;

bool spacing_is_uniform(const std::vector<double>& nodes)
{
    const double h = nodes.back() / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (std::abs((nodes[i + 1] - nodes[i]) - h) > kUniformTolerance * h) return false;
    }
    return true;
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> nodes, bool uniform)
    : nodes_(std::move(nodes)), uniform_(uniform)
{
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        mesh_ = std::max(mesh_, nodes_[i + 1] - nodes_[i]);
    }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("grid horizon must be positive and finite");
    }
    if (steps == 0) throw DomainError("grid needs at least one step");
    std::vector<double> nodes(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        nodes[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
    }
    nodes.back() = horizon;
    return TimeGrid(std::move(nodes), true);
}

TimeGrid TimeGrid::from_nodes(std::vector<double> nodes)
{
    if (nodes.size() < 2) throw DomainError("grid needs at least two nodes");
    if (nodes.front() != 0.0) throw DomainError("grid must start at t_0 = 0");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i + 1] > nodes[i]) || !std::isfinite(nodes[i + 1])) {
            throw DomainError("grid nodes must be finite and strictly increasing (index " +
                              std::to_string(i + 1) + ")");
        }
    }
    const bool uniform = spacing_is_uniform(nodes);
    return TimeGrid(std::move(nodes), uniform);
}

std::optional<std::size_t> TimeGrid::find_node(double t) const
{
    const double tol = kNodeTolerance * horizon();
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
    if (it != nodes_.end() && std::abs(*it - t) <= tol) {
        return static_cast<std::size_t>(it - nodes_.begin());
    }
    return std::nullopt;
}

std::size_t TimeGrid::node_index(double t) const
{
    if (auto idx = find_node(t)) return *idx;
    throw NodeError("time " + std::to_string(t) + " is not a grid node");
}

std::size_t TimeGrid::cell_index(double t) const
{
    if (t < 0.0 || t > horizon() * (1.0 + kNodeTolerance)) {
        throw DomainError("time " + std::to_string(t) + " outside [0, T]");
    }
    if (auto idx = find_node(t)) return *idx;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

TimeGrid TimeGrid::prefix(std::size_t last) const
{
    if (last == 0 || last >= nodes_.size()) throw DomainError("prefix index out of range");
    std::vector<double> nodes(nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    return TimeGrid(std::move(nodes), uniform_);
}

TimeGrid TimeGrid::slice(std::size_t i0, std::size_t i1) const
{
    if (i0 >= i1 || i1 >= nodes_.size()) throw DomainError("slice range out of order");
    if (i0 == 0) return prefix(i1);
    std::vector<double> nodes;
    nodes.reserve(i1 - i0 + 1);
    const double origin = nodes_[i0];
    for (std::size_t i = i0; i <= i1; ++i) nodes.push_back(nodes_[i] - origin);
    nodes.front() = 0.0;
    const bool uniform = uniform_ || spacing_is_uniform(nodes);
    return TimeGrid(std::move(nodes), uniform);
}

TimeGrid TimeGrid::coarsen(std::size_t stride) const
{
    if (stride == 0 || steps() % stride != 0) {
        throw DomainError("coarsening stride must divide the number of steps");
    }
    std::vector<double> nodes;
    nodes.reserve(steps() / stride + 1);
    for (std::size_t i = 0; i < nodes_.size(); i += stride) nodes.push_back(nodes_[i]);
    return TimeGrid(std::move(nodes), uniform_);
}

bool TimeGrid::refines(const TimeGrid& other) const
{
    if (std::abs(other.horizon() - horizon()) > kNodeTolerance * horizon()) return false;
    return std::all_of(other.nodes_.begin(), other.nodes_.end(),
                       [this](double t) { return find_node(t).has_value(); });
}

TimeGrid merge(const TimeGrid& a, const TimeGrid& b)
{
    if (std::abs(a.horizon() - b.horizon()) > kNodeTolerance * a.horizon()) {
        throw DomainError("cannot merge grids with different horizons");
    }
    std::vector<double> nodes;
    nodes.reserve(a.size() + b.size());
    std::merge(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
               std::back_inserter(nodes));
    const double tol = kNodeTolerance * a.horizon();
    std::vector<double> unique;
    unique.reserve(nodes.size());
    for (double t : nodes) {
        if (unique.empty() || t - unique.back() > tol) unique.push_back(t);
    }
    unique.back() = a.horizon();
    return TimeGrid::from_nodes(std::move(unique));
}

}  // namespace fsde
