#include "gmat/google.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "gmat/error.hpp"
#include "gmat/parallel.hpp"

namespace gmat {

GoogleOperator::GoogleOperator(const DirectedGraph &graph, double alpha)
    : graph_(&graph), reversed_(graph.transpose()), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw PreconditionError("damping factor must lie in (0, 1), got " + std::to_string(alpha));
    }
    const std::size_t n = graph.node_count();
    inv_out_degree_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto k = graph.out_degree(static_cast<NodeId>(j));
        inv_out_degree_[j] = k ? 1.0 / static_cast<double>(k) : 0.0;
        if (k == 0) {
            dangling_.push_back(static_cast<NodeId>(j));
        }
    }
}

void GoogleOperator::apply_with_mass(std::span<const double> v, std::span<double> out,
                                     double mass) const {
    const std::size_t n = size();
    if (v.size() != n || out.size() != n) {
        throw PreconditionError("vector length " + std::to_string(v.size()) +
                                " does not match operator size " + std::to_string(n));
    }
    const double dangling_mass =
        detail::blocked_sum(dangling_.size(), [&](std::size_t k) { return v[dangling_[k]]; });
    const double nn = static_cast<double>(n);
    const double teleport = (1.0 - alpha_) * mass / nn;
    const double uniform = teleport + alpha_ * dangling_mass / nn;

    const auto offsets = reversed_.offsets();
    const auto sources = reversed_.targets();
    detail::parallel_for(n, [&](std::size_t i) {
        double link = 0.0;
        for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) {
            const NodeId j = sources[e];
            link += v[j] * inv_out_degree_[j];
        }
        out[i] = alpha_ * link + uniform;
    });
}

void GoogleOperator::apply(std::span<const double> v, std::span<double> out) const {
    if (v.size() != size()) {
        throw PreconditionError("vector length " + std::to_string(v.size()) +
                                " does not match operator size " + std::to_string(size()));
    }
    const double mass = detail::blocked_sum(v.size(), [&](std::size_t i) { return v[i]; });
    apply_with_mass(v, out, mass);
}

std::vector<double> GoogleOperator::apply(std::span<const double> v) const {
    std::vector<double> out(size());
    apply(v, out);
    return out;
}

void GoogleOperator::apply_transpose(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = size();
    if (v.size() != n || out.size() != n) {
        throw PreconditionError("vector length " + std::to_string(v.size()) +
                                " does not match operator size " + std::to_string(n));
    }
    const double mass = detail::blocked_sum(n, [&](std::size_t i) { return v[i]; });
    const double nn = static_cast<double>(n);
    const double teleport = (1.0 - alpha_) * mass / nn;
    const double dangling_column = teleport + alpha_ * mass / nn;
    detail::parallel_for(n, [&](std::size_t j) {
        const auto row = graph_->out_neighbors(static_cast<NodeId>(j));
        if (row.empty()) {
            out[j] = dangling_column;
            return;
        }
        double link = 0.0;
        for (NodeId i : row) {
            link += v[i];
        }
        out[j] = alpha_ * link * inv_out_degree_[j] + teleport;
    });
}

double GoogleOperator::entry(NodeId target, NodeId source) const {
    const double nn = static_cast<double>(size());
    const double teleport = (1.0 - alpha_) / nn;
    if (graph_->is_dangling(source)) {
        return alpha_ / nn + teleport;
    }
    return graph_->has_edge(source, target) ? alpha_ * inv_out_degree_[source] + teleport
                                            : teleport;
}

RankTable::RankTable(std::span<const double> probabilities) {
    const std::size_t n = probabilities.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), NodeId{0});
    std::sort(order_.begin(), order_.end(), [&](NodeId a, NodeId b) {
        if (probabilities[a] != probabilities[b]) {
            return probabilities[a] > probabilities[b];
        }
        return a < b;
    });
    rank_of_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        rank_of_[order_[k]] = static_cast<std::uint32_t>(k + 1);
    }
}

RankResult pagerank(const GoogleOperator &op, double tol, std::size_t max_iter,
                    std::span<const double> start) {
    if (!(tol > 0.0)) {
        throw PreconditionError("tolerance must be positive");
    }
    const std::size_t n = op.size();
    std::vector<double> current;
    if (start.empty()) {
        current.assign(n, 1.0 / static_cast<double>(n));
    } else {
        if (start.size() != n) {
            throw PreconditionError("start vector has length " + std::to_string(start.size()) +
                                    ", expected " + std::to_string(n));
        }
        current.assign(start.begin(), start.end());
    }
    std::vector<double> next(n);

    SolverReport report;
    while (report.iterations < max_iter) {
        op.apply_with_mass(current, next, 1.0);
        const double diff =
            detail::blocked_sum(n, [&](std::size_t i) { return std::abs(next[i] - current[i]); });
        current.swap(next);
        ++report.iterations;
        report.residual = diff;
#ifndef NDEBUG
        const double total = detail::blocked_sum(n, [&](std::size_t i) { return current[i]; });
        assert(std::abs(total - 1.0) <= 1e-12);
#endif
        if (diff <= tol) {
            report.converged = true;
            break;
        }
    }

    RankResult result;
    result.ranks = RankTable(current);
    result.probabilities.values = std::move(current);
    result.probabilities.kind = RankKind::pagerank;
    result.report = report;
    return result;
}

RankResult pagerank(const DirectedGraph &g, const PowerOptions &options) {
    const GoogleOperator op(g, options.alpha);
    return pagerank(op, options.tol, options.max_iter);
}

RankResult cheirank(const DirectedGraph &g, const PowerOptions &options) {
    const DirectedGraph reversed = g.transpose();
    RankResult result = pagerank(reversed, options);
    result.probabilities.kind = RankKind::cheirank;
    return result;
}

std::vector<std::uint32_t> subset_rank(const RankTable &table, std::span<const NodeId> subset) {
    std::unordered_set<NodeId> seen;
    for (NodeId id : subset) {
        if (id >= table.size()) {
            throw PreconditionError("node id " + std::to_string(id) + " is outside the rank table");
        }
        if (!seen.insert(id).second) {
            throw PreconditionError("node id " + std::to_string(id) + " repeated in subset");
        }
    }
    std::vector<std::size_t> position(subset.size());
    std::iota(position.begin(), position.end(), std::size_t{0});
    std::sort(position.begin(), position.end(), [&](std::size_t a, std::size_t b) {
        return table.rank_of(subset[a]) < table.rank_of(subset[b]);
    });
    std::vector<std::uint32_t> local(subset.size());
    for (std::size_t k = 0; k < position.size(); ++k) {
        local[position[k]] = static_cast<std::uint32_t>(k + 1);
    }
    return local;
}

} // namespace gmat
