#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gmat/graph.hpp"

namespace gmat {

inline constexpr double kDefaultAlpha = 0.85;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr std::size_t kDefaultMaxIterations = 1000;

/**
 * Matrix-free Google matrix of a directed graph.
 *
 *     G(i, j) = alpha * S(i, j) + (1 - alpha) / N
 *     S(i, j) = A(i, j) / k_out(j),   or 1 / N for every i when k_out(j) = 0
 *
 * Column j holds the transition probabilities out of node j. Applying the
 * operator costs O(N + N_l) and never forms a dense matrix. The operator keeps
 * a pointer to `graph`, which must outlive it, and owns the reversed adjacency
 * it needs for row-wise (pull) products.
 */
class GoogleOperator {
public:
    /// Throws `PreconditionError` unless 0 < alpha < 1.
    GoogleOperator(const DirectedGraph &graph, double alpha = kDefaultAlpha);
    GoogleOperator(DirectedGraph &&, double = kDefaultAlpha) = delete;

    std::size_t size() const noexcept { return graph_->node_count(); }
    double alpha() const noexcept { return alpha_; }
    const DirectedGraph &graph() const noexcept { return *graph_; }
    bool is_dangling(NodeId node) const noexcept { return graph_->is_dangling(node); }

    /// out = G v. The teleportation and dangling terms scale with sum(v), so a
    /// probability vector maps to a probability vector.
    void apply(std::span<const double> v, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> v) const;

    /// out = G^T v.
    void apply_transpose(std::span<const double> v, std::span<double> out) const;

    /// Single entry G(target, source).
    double entry(NodeId target, NodeId source) const;

    /// out = G v assuming v sums to `mass`; used by the power iteration so the
    /// teleportation term stays exactly (1 - alpha) / N.
    void apply_with_mass(std::span<const double> v, std::span<double> out, double mass) const;

private:
    const DirectedGraph *graph_;
    DirectedGraph reversed_;
    std::vector<double> inv_out_degree_;
    std::vector<NodeId> dangling_;
    double alpha_;
};

enum class RankKind { pagerank, cheirank };

struct ProbabilityVector {
    std::vector<double> values;
    RankKind kind = RankKind::pagerank;
};

/**
 * Nodes ordered by descending probability. Exact ties go to the smaller node
 * id. `rank_of(node)` is the 1-based position (K for PageRank, K* for
 * CheiRank).
 */
class RankTable {
public:
    RankTable() = default;
    explicit RankTable(std::span<const double> probabilities);

    std::size_t size() const noexcept { return order_.size(); }
    std::span<const NodeId> order() const noexcept { return order_; }
    std::uint32_t rank_of(NodeId node) const noexcept { return rank_of_[node]; }
    std::span<const std::uint32_t> ranks() const noexcept { return rank_of_; }

    friend bool operator==(const RankTable &, const RankTable &) = default;

private:
    std::vector<NodeId> order_;
    std::vector<std::uint32_t> rank_of_;
};

struct SolverReport {
    std::size_t iterations = 0;
    double residual = 0.0; ///< final L1 change between iterates
    bool converged = false;
};

struct PowerOptions {
    double alpha = kDefaultAlpha;
    double tol = kDefaultTolerance;
    std::size_t max_iter = kDefaultMaxIterations;
};

struct RankResult {
    ProbabilityVector probabilities;
    RankTable ranks;
    SolverReport report;
};

/// Power iteration P <- G P until the L1 change is at most `tol`. Starts from
/// the uniform vector unless `start` is given (it must be a probability
/// vector). A run that exhausts `max_iter` returns its last iterate with
/// `report.converged == false`.
RankResult pagerank(const GoogleOperator &op, double tol = kDefaultTolerance,
                    std::size_t max_iter = kDefaultMaxIterations,
                    std::span<const double> start = {});
RankResult pagerank(const DirectedGraph &g, const PowerOptions &options = {});

/// PageRank of the edge-reversed graph.
RankResult cheirank(const DirectedGraph &g, const PowerOptions &options = {});

/// Rank of each `subset` member among the subset only, following the global
/// order. Returns a permutation of 1..|subset| aligned with `subset`. Throws
/// `PreconditionError` for unknown or repeated ids.
std::vector<std::uint32_t> subset_rank(const RankTable &table, std::span<const NodeId> subset);

} // namespace gmat
