#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmat/google.hpp"
#include "gmat/labels.hpp"

namespace gmat {

using Rank = std::uint32_t;

/// Ranks of named entities from one source (an edition, a composite score, an
/// external ranking). `ranks[k]` belongs to `entities[k]`; 1 is best. Equal
/// ranks denote ties.
struct Ranking {
    std::string name;
    std::vector<std::string> entities;
    std::vector<Rank> ranks;
};

struct ThetaEntry {
    std::string entity;
    double theta = 0.0;
    /// sum over editions of (N_ph + 1 - k_pe); Theta = score / (N_ph N_ed).
    std::uint64_t score = 0;
    /// Competition rank on descending Theta: equal scores share a rank and
    /// the next distinct score skips accordingly (1, 2, 2, 4).
    Rank display_rank = 0;
};

/// Entries sorted by descending Theta; equal Theta is ordered by entity label.
struct ThetaTable {
    std::size_t entity_count = 0;
    std::size_t edition_count = 0;
    std::vector<ThetaEntry> entries;

    /// The composite as a ranking over the same entities, using display ranks.
    Ranking as_ranking(std::string name) const;
};

/**
 * Cross-edition aggregate Theta_p = (N_ph N_ed)^-1 sum_e (N_ph + 1 - k_pe).
 *
 * Every edition must rank the same entity set (order may differ), and each
 * edition's ranks must be a permutation of 1..N_ph. Violations throw
 * `PreconditionError` naming every offending entity.
 */
ThetaTable theta_scores(std::span<const Ranking> editions);

/**
 * d = (N (N - 1))^-1 sum over unordered pairs of (1 - sign(dK1) sign(dK2)),
 * with sign(0) = 0, so a pair tied in exactly one ranking contributes 1.
 * O(N log N). Throws `PreconditionError` for N < 2 or mismatched lengths.
 */
double kendall_distance(std::span<const Rank> first, std::span<const Rank> second);

/// Aligns both rankings by entity label. Throws `PreconditionError` unless
/// both cover the same entity set.
double kendall_distance(const Ranking &first, const Ranking &second);

/**
 * Both rankings restricted to their common entities and re-ranked 1..|A & B|
 * (ties stay tied, competition style). Entities follow `first`'s order.
 * Throws `PreconditionError` when fewer than two entities are shared.
 */
std::pair<Ranking, Ranking> restrict_common(const Ranking &first, const Ranking &second);

/// 100 x 100 histogram of nodes over (log10 K, log10 K*), both axes spanning
/// [0, log10 N] in equal steps. Cells are half-open except the last, which
/// is closed so that rank N lands in bin 99.
class DensityGrid {
public:
    static constexpr std::size_t kBins = 100;

    DensityGrid() = default;
    explicit DensityGrid(std::size_t n);

    /// Bin of rank `rank` (1-based) out of `n`.
    static std::size_t bin_of(std::uint32_t rank, std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    std::uint64_t count(std::size_t k_bin, std::size_t kstar_bin) const noexcept {
        return counts_[kstar_bin * kBins + k_bin];
    }
    void add(std::uint32_t k, std::uint32_t kstar) {
        ++counts_[bin_of(kstar, n_) * kBins + bin_of(k, n_)];
    }
    std::uint64_t total() const noexcept;

    /// The kBins + 1 bin edges in log10 units, shared by both axes.
    std::vector<double> edges() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// Throws `PreconditionError` when the tables cover different node counts.
DensityGrid density_grid(const RankTable &pagerank, const RankTable &cheirank);

/// Labels of the first `k` nodes in rank order, falling back to the decimal id
/// for unlabelled nodes. With a non-empty `subset`, only subset members are
/// listed (in global rank order). Throws `PreconditionError` if `k` exceeds
/// the number of candidates.
std::vector<std::string> topk_table(const RankTable &table, const NodeLabelMap &labels,
                                    std::size_t k, std::span<const NodeId> subset = {});

} // namespace gmat
