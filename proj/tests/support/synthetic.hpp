#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "gmat/graph.hpp"

namespace gmat::testing {

/// Large random digraph in the regime of big encyclopedia link graphs:
/// mean out-degree around 22, about 1% dangling nodes, and 10% of nodes
/// grouped into closed 2-cycles whose in-links all hit one entry node. The
/// closed pairs give the link matrix a second unit eigenvalue, so the power
/// iteration contracts like alpha^k as on real web graphs instead of the much
/// faster rate of a uniform random graph.
inline std::vector<Edge> trap_graph_edges(std::size_t n, double mean_degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t traps = (n / 10) & ~std::size_t{1};
    const std::size_t dangling = n / 100;
    std::poisson_distribution<int> degree(mean_degree);
    std::uniform_int_distribution<NodeId> target(0, static_cast<NodeId>(n - 1));

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * mean_degree * 0.9) + traps);
    for (std::size_t t = 0; t < traps; t += 2) {
        edges.push_back({static_cast<NodeId>(t), static_cast<NodeId>(t + 1)});
        edges.push_back({static_cast<NodeId>(t + 1), static_cast<NodeId>(t)});
    }
    for (std::size_t src = traps + dangling; src < n; ++src) {
        const int k = degree(rng);
        for (int e = 0; e < k; ++e) {
            NodeId dst = target(rng);
            if (dst < traps) {
                dst &= ~NodeId{1};
            }
            edges.push_back({static_cast<NodeId>(src), dst});
        }
    }
    return edges;
}

} // namespace gmat::testing
