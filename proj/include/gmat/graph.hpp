#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gmat {

using NodeId = std::uint32_t;

/// A directed link `src -> dst`.
struct Edge {
    NodeId src;
    NodeId dst;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// What `DirectedGraph::build` discarded from its input.
struct BuildDiagnostics {
    std::size_t input_edges = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
};

/**
 * Immutable directed 0/1 network in compressed out-adjacency form.
 *
 * Each source owns one ascending, duplicate-free list of targets. Self-loops
 * are never stored. The adjacency matrix entry A(i, j) is 1 iff `j -> i` is an
 * edge, so `out_degree(j)` is the column sum of A.
 */
class DirectedGraph {
public:
    DirectedGraph() = default;

    /// Builds the canonical graph from `edges`. Duplicates collapse to one
    /// edge and self-loops are dropped. Throws `PreconditionError` if `n` is 0
    /// and `ParseError` (carrying the 1-based edge position) for an id outside
    /// [0, n).
    static DirectedGraph build(std::span<const Edge> edges, std::size_t n,
                               BuildDiagnostics *diagnostics = nullptr);

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size(); }

    std::span<const NodeId> out_neighbors(NodeId node) const noexcept {
        return {targets_.data() + offsets_[node], targets_.data() + offsets_[node + 1]};
    }
    std::size_t out_degree(NodeId node) const noexcept {
        return static_cast<std::size_t>(offsets_[node + 1] - offsets_[node]);
    }
    std::size_t in_degree(NodeId node) const noexcept { return in_degree_[node]; }
    bool is_dangling(NodeId node) const noexcept { return out_degree(node) == 0; }

    bool has_edge(NodeId src, NodeId dst) const noexcept;

    /// The graph with every edge reversed. Out and in degrees swap.
    DirectedGraph transpose() const;

    /// Edges in canonical order (by source, then target).
    std::vector<Edge> edges() const;

    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::span<const NodeId> targets() const noexcept { return targets_; }

    friend bool operator==(const DirectedGraph &, const DirectedGraph &) = default;

private:
    std::vector<std::uint64_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<std::uint32_t> in_degree_;
};

/// Structural summary of a graph.
struct GraphStats {
    std::size_t n = 0;
    std::size_t edge_count = 0;
    double density = 0.0;     ///< N_l / (N (N - 1))
    double mean_degree = 0.0; ///< N_l / N
    std::size_t dangling_count = 0;
};

/// Throws `PreconditionError` for graphs with fewer than two nodes, for which
/// the density is undefined.
GraphStats graph_stats(const DirectedGraph &g);

/// The same formulas from bare counts, for checking published tables without
/// the underlying graph.
GraphStats graph_stats(std::size_t n, std::size_t edge_count, std::size_t dangling_count = 0);

} // namespace gmat
