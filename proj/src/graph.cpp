#include "gmat/graph.hpp"

#include <algorithm>
#include <string>

#include "gmat/error.hpp"

namespace gmat {

DirectedGraph DirectedGraph::build(std::span<const Edge> edges, std::size_t n,
                                   BuildDiagnostics *diagnostics) {
    if (n == 0) {
        throw PreconditionError("graph must have at least one node");
    }
    if (n > std::size_t{0xffffffffu}) {
        throw PreconditionError("node count exceeds 32-bit id range");
    }

    BuildDiagnostics diag;
    diag.input_edges = edges.size();

    // Counting sort by source, skipping self-loops.
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge &e = edges[k];
        if (e.src >= n || e.dst >= n) {
            throw ParseError("edge " + std::to_string(k + 1) + " (" + std::to_string(e.src) +
                             ", " + std::to_string(e.dst) + ") has id outside [0, " +
                             std::to_string(n) + ")");
        }
        if (e.src == e.dst) {
            ++diag.self_loops_dropped;
            continue;
        }
        ++offsets[e.src + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        offsets[i + 1] += offsets[i];
    }

    std::vector<NodeId> targets(offsets[n]);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge &e : edges) {
        if (e.src != e.dst) {
            targets[cursor[e.src]++] = e.dst;
        }
    }

    // Sort and dedupe each row, compacting in place.
    std::uint64_t write = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto begin = targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]);
        const auto end = targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]);
        std::sort(begin, end);
        const auto last = std::unique(begin, end);
        const auto kept = static_cast<std::uint64_t>(last - begin);
        diag.duplicates_dropped += static_cast<std::size_t>(end - last);
        std::copy(begin, last, targets.begin() + static_cast<std::ptrdiff_t>(write));
        offsets[i] = write;
        write += kept;
    }
    offsets[n] = write;
    targets.resize(write);
    targets.shrink_to_fit();

    DirectedGraph g;
    g.offsets_ = std::move(offsets);
    g.targets_ = std::move(targets);
    g.in_degree_.assign(n, 0);
    for (NodeId t : g.targets_) {
        ++g.in_degree_[t];
    }
    if (diagnostics) {
        *diagnostics = diag;
    }
    return g;
}

bool DirectedGraph::has_edge(NodeId src, NodeId dst) const noexcept {
    const auto row = out_neighbors(src);
    return std::binary_search(row.begin(), row.end(), dst);
}

DirectedGraph DirectedGraph::transpose() const {
    const std::size_t n = node_count();
    DirectedGraph t;
    t.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        t.offsets_[i + 1] = t.offsets_[i] + in_degree_[i];
    }
    t.targets_.resize(targets_.size());
    std::vector<std::uint64_t> cursor(t.offsets_.begin(), t.offsets_.end() - 1);
    // Visiting sources in ascending order leaves every reversed row sorted.
    for (std::size_t src = 0; src < n; ++src) {
        for (NodeId dst : out_neighbors(static_cast<NodeId>(src))) {
            t.targets_[cursor[dst]++] = static_cast<NodeId>(src);
        }
    }
    t.in_degree_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.in_degree_[i] = static_cast<std::uint32_t>(out_degree(static_cast<NodeId>(i)));
    }
    return t;
}

std::vector<Edge> DirectedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t src = 0; src < node_count(); ++src) {
        for (NodeId dst : out_neighbors(static_cast<NodeId>(src))) {
            out.push_back({static_cast<NodeId>(src), dst});
        }
    }
    return out;
}

GraphStats graph_stats(std::size_t n, std::size_t edge_count, std::size_t dangling_count) {
    if (n < 2) {
        throw PreconditionError("graph density needs at least two nodes");
    }
    GraphStats s;
    s.n = n;
    s.edge_count = edge_count;
    const double nn = static_cast<double>(n);
    s.density = static_cast<double>(edge_count) / (nn * (nn - 1.0));
    s.mean_degree = static_cast<double>(edge_count) / nn;
    s.dangling_count = dangling_count;
    return s;
}

GraphStats graph_stats(const DirectedGraph &g) {
    std::size_t dangling = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        dangling += g.is_dangling(static_cast<NodeId>(i)) ? 1 : 0;
    }
    return graph_stats(g.node_count(), g.edge_count(), dangling);
}

} // namespace gmat
