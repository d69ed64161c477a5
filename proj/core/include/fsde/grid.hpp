#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fsde {

/// Partition 0 = t_0 < t_1 < ... < t_n = T of a finite horizon.
class TimeGrid {
  public:
    /// n equal steps on [0, horizon].
    static TimeGrid uniform(double horizon, std::size_t steps);
    /// Arbitrary partition; first node must be 0 and nodes strictly increasing.
    static TimeGrid from_nodes(std::vector<double> nodes);

    [[nodiscard]] std::size_t steps() const noexcept { return nodes_.size() - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] double horizon() const noexcept { return nodes_.back(); }
    [[nodiscard]] double mesh() const noexcept { return mesh_; }
    [[nodiscard]] bool is_uniform() const noexcept { return uniform_; }
    [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] double step(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }

    /// Index of the node equal to t (relative tolerance 1e-12 of the horizon).
    [[nodiscard]] std::optional<std::size_t> find_node(double t) const;
    /// As find_node, but throws NodeError when t is not a node.
    [[nodiscard]] std::size_t node_index(double t) const;

    /// The cell index i with t in [t_i, t_{i+1}); the last node maps to n.
    [[nodiscard]] std::size_t cell_index(double t) const;
    /// Left-endpoint projection k_n(t) used by the Euler scheme.
    [[nodiscard]] double project(double t) const { return nodes_[cell_index(t)]; }

    /// Nodes 0..last as a grid on [0, t_last].
    [[nodiscard]] TimeGrid prefix(std::size_t last) const;
    /// Nodes i0..i1 shifted so that t_{i0} becomes 0.
    [[nodiscard]] TimeGrid slice(std::size_t i0, std::size_t i1) const;
    /// Every stride-th node; requires stride to divide n.
    [[nodiscard]] TimeGrid coarsen(std::size_t stride) const;
    /// True when every node of other is a node of this grid.
    [[nodiscard]] bool refines(const TimeGrid& other) const;

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) { return a.nodes_ == b.nodes_; }

  private:
    TimeGrid(std::vector<double> nodes, bool uniform);

    std::vector<double> nodes_;
    double mesh_ = 0.0;
    bool uniform_ = false;
};

/// Sorted union of the nodes of two grids with the same horizon.
TimeGrid merge(const TimeGrid& a, const TimeGrid& b);

}  // namespace fsde
