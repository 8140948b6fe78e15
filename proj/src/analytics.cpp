#include "gmat/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "gmat/error.hpp"

namespace gmat {

namespace {

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (const auto &item : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += "'" + item + "'";
    }
    return out;
}

std::unordered_map<std::string, std::size_t> index_entities(const Ranking &r) {
    if (r.entities.size() != r.ranks.size()) {
        throw PreconditionError("ranking '" + r.name + "' has " + std::to_string(r.entities.size()) +
                                " entities but " + std::to_string(r.ranks.size()) + " ranks");
    }
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> repeated;
    for (std::size_t k = 0; k < r.entities.size(); ++k) {
        if (!index.emplace(r.entities[k], k).second) {
            repeated.push_back(r.entities[k]);
        }
    }
    if (!repeated.empty()) {
        throw PreconditionError("ranking '" + r.name + "' repeats " + join(repeated));
    }
    return index;
}

// Every entity of `other` missing from `base`, and vice versa.
void require_same_entities(const Ranking &base,
                           const std::unordered_map<std::string, std::size_t> &base_index,
                           const Ranking &other,
                           const std::unordered_map<std::string, std::size_t> &other_index) {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    for (const auto &e : base.entities) {
        if (!other_index.contains(e)) {
            missing.push_back(e);
        }
    }
    for (const auto &e : other.entities) {
        if (!base_index.contains(e)) {
            extra.push_back(e);
        }
    }
    if (missing.empty() && extra.empty()) {
        return;
    }
    std::string msg = "ranking '" + other.name + "' does not match '" + base.name + "':";
    if (!missing.empty()) {
        msg += " missing " + join(missing) + ";";
    }
    if (!extra.empty()) {
        msg += " unexpected " + join(extra) + ";";
    }
    msg.pop_back();
    throw PreconditionError(msg);
}

// Competition ranks of `values` ascending: 1 + number of strictly smaller.
std::vector<Rank> competition_ranks(const std::vector<Rank> &values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Rank> out(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && values[order[k]] == values[order[k - 1]]) {
            out[order[k]] = out[order[k - 1]];
        } else {
            out[order[k]] = static_cast<Rank>(k + 1);
        }
    }
    return out;
}

std::uint64_t tied_pairs(std::uint64_t run) { return run * (run - 1) / 2; }

// Inversions (strictly decreasing pairs) of `a`, sorting it in place.
std::uint64_t count_inversions(std::vector<Rank> &a, std::vector<Rank> &scratch) {
    const std::size_t n = a.size();
    std::uint64_t swaps = 0;
    scratch.resize(n);
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo;
            std::size_t j = mid;
            std::size_t k = lo;
            while (i < mid && j < hi) {
                if (a[j] < a[i]) {
                    swaps += mid - i;
                    scratch[k++] = a[j++];
                } else {
                    scratch[k++] = a[i++];
                }
            }
            while (i < mid) {
                scratch[k++] = a[i++];
            }
            while (j < hi) {
                scratch[k++] = a[j++];
            }
        }
        a.swap(scratch);
    }
    return swaps;
}

} // namespace

Ranking ThetaTable::as_ranking(std::string name) const {
    Ranking r;
    r.name = std::move(name);
    r.entities.reserve(entries.size());
    r.ranks.reserve(entries.size());
    for (const auto &e : entries) {
        r.entities.push_back(e.entity);
        r.ranks.push_back(e.display_rank);
    }
    return r;
}

ThetaTable theta_scores(std::span<const Ranking> editions) {
    if (editions.empty()) {
        throw PreconditionError("Theta score needs at least one ranking");
    }
    const Ranking &base = editions.front();
    const auto base_index = index_entities(base);
    const std::size_t nph = base.entities.size();
    if (nph == 0) {
        throw PreconditionError("ranking '" + base.name + "' is empty");
    }

    std::vector<std::uint64_t> score(nph, 0);
    for (const Ranking &edition : editions) {
        const auto index = index_entities(edition);
        require_same_entities(base, base_index, edition, index);
        std::vector<std::string> bad;
        std::vector<bool> used(nph + 1, false);
        for (std::size_t k = 0; k < edition.entities.size(); ++k) {
            const Rank rank = edition.ranks[k];
            if (rank < 1 || rank > nph || used[rank]) {
                bad.push_back(edition.entities[k] + "=" + std::to_string(rank));
                continue;
            }
            used[rank] = true;
            score[base_index.at(edition.entities[k])] += nph + 1 - rank;
        }
        if (!bad.empty()) {
            throw PreconditionError("ranking '" + edition.name +
                                    "' is not a permutation of 1.." + std::to_string(nph) +
                                    ": " + join(bad));
        }
    }

    ThetaTable table;
    table.entity_count = nph;
    table.edition_count = editions.size();
    const double denom = static_cast<double>(nph) * static_cast<double>(editions.size());
    table.entries.resize(nph);
    for (std::size_t k = 0; k < nph; ++k) {
        table.entries[k].entity = base.entities[k];
        table.entries[k].score = score[k];
        table.entries[k].theta = static_cast<double>(score[k]) / denom;
    }
    std::sort(table.entries.begin(), table.entries.end(), [](const ThetaEntry &a, const ThetaEntry &b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.entity < b.entity;
    });
    for (std::size_t k = 0; k < nph; ++k) {
        const bool tied = k > 0 && table.entries[k].score == table.entries[k - 1].score;
        table.entries[k].display_rank =
            tied ? table.entries[k - 1].display_rank : static_cast<Rank>(k + 1);
    }
    return table;
}

double kendall_distance(std::span<const Rank> first, std::span<const Rank> second) {
    const std::size_t n = first.size();
    if (second.size() != n) {
        throw PreconditionError("rankings have different lengths (" + std::to_string(n) + " vs " +
                                std::to_string(second.size()) + ")");
    }
    if (n < 2) {
        throw PreconditionError("Kendall distance needs at least two items");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (first[a] != first[b]) {
            return first[a] < first[b];
        }
        return second[a] < second[b];
    });

    std::uint64_t ties_first = 0;
    std::uint64_t ties_both = 0;
    std::uint64_t run_first = 1;
    std::uint64_t run_both = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        const bool same_first = k < n && first[order[k]] == first[order[k - 1]];
        const bool same_both = same_first && second[order[k]] == second[order[k - 1]];
        if (same_first) {
            ++run_first;
        } else {
            ties_first += tied_pairs(run_first);
            run_first = 1;
        }
        if (same_both) {
            ++run_both;
        } else {
            ties_both += tied_pairs(run_both);
            run_both = 1;
        }
    }

    std::vector<Rank> seq(n);
    for (std::size_t k = 0; k < n; ++k) {
        seq[k] = second[order[k]];
    }
    std::vector<Rank> scratch;
    const std::uint64_t discordant = count_inversions(seq, scratch);

    std::uint64_t ties_second = 0;
    std::uint64_t run = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k < n && seq[k] == seq[k - 1]) {
            ++run;
        } else {
            ties_second += tied_pairs(run);
            run = 1;
        }
    }

    const std::uint64_t pairs = tied_pairs(n);
    // sum of sign(dK1) sign(dK2) over pairs = concordant - discordant.
    const std::int64_t agreement = static_cast<std::int64_t>(pairs - ties_first - ties_second +
                                                             ties_both) -
                                   2 * static_cast<std::int64_t>(discordant);
    const double disagreement = static_cast<double>(static_cast<std::int64_t>(pairs) - agreement);
    return disagreement / (2.0 * static_cast<double>(pairs));
}

double kendall_distance(const Ranking &first, const Ranking &second) {
    const auto first_index = index_entities(first);
    const auto second_index = index_entities(second);
    require_same_entities(first, first_index, second, second_index);
    std::vector<Rank> aligned(first.entities.size());
    for (std::size_t k = 0; k < first.entities.size(); ++k) {
        aligned[k] = second.ranks[second_index.at(first.entities[k])];
    }
    return kendall_distance(first.ranks, aligned);
}

std::pair<Ranking, Ranking> restrict_common(const Ranking &first, const Ranking &second) {
    index_entities(first);
    const auto second_index = index_entities(second);

    Ranking a;
    Ranking b;
    a.name = first.name;
    b.name = second.name;
    std::vector<Rank> raw_a;
    std::vector<Rank> raw_b;
    for (std::size_t k = 0; k < first.entities.size(); ++k) {
        const auto it = second_index.find(first.entities[k]);
        if (it == second_index.end()) {
            continue;
        }
        a.entities.push_back(first.entities[k]);
        raw_a.push_back(first.ranks[k]);
        raw_b.push_back(second.ranks[it->second]);
    }
    if (a.entities.size() < 2) {
        throw PreconditionError("rankings '" + first.name + "' and '" + second.name + "' share " +
                                std::to_string(a.entities.size()) +
                                " entities; at least two are needed");
    }
    b.entities = a.entities;
    a.ranks = competition_ranks(raw_a);
    b.ranks = competition_ranks(raw_b);
    return {std::move(a), std::move(b)};
}

DensityGrid::DensityGrid(std::size_t n) : n_(n), counts_(kBins * kBins, 0) {}

std::size_t DensityGrid::bin_of(std::uint32_t rank, std::size_t n) {
    if (n <= 1) {
        return 0;
    }
    const double pos = std::log10(static_cast<double>(rank)) / std::log10(static_cast<double>(n));
    const auto bin = static_cast<std::size_t>(std::floor(pos * static_cast<double>(kBins)));
    return std::min(bin, kBins - 1);
}

std::uint64_t DensityGrid::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<double> DensityGrid::edges() const {
    std::vector<double> out(kBins + 1);
    const double top = n_ > 1 ? std::log10(static_cast<double>(n_)) : 0.0;
    for (std::size_t k = 0; k <= kBins; ++k) {
        out[k] = top * static_cast<double>(k) / static_cast<double>(kBins);
    }
    return out;
}

DensityGrid density_grid(const RankTable &pagerank, const RankTable &cheirank) {
    if (pagerank.size() != cheirank.size()) {
        throw PreconditionError("PageRank table has " + std::to_string(pagerank.size()) +
                                " nodes but CheiRank table has " +
                                std::to_string(cheirank.size()));
    }
    DensityGrid grid(pagerank.size());
    for (std::size_t node = 0; node < pagerank.size(); ++node) {
        grid.add(pagerank.rank_of(static_cast<NodeId>(node)),
                 cheirank.rank_of(static_cast<NodeId>(node)));
    }
    return grid;
}

std::vector<std::string> topk_table(const RankTable &table, const NodeLabelMap &labels,
                                    std::size_t k, std::span<const NodeId> subset) {
    std::vector<NodeId> candidates;
    if (subset.empty()) {
        candidates.assign(table.order().begin(), table.order().end());
    } else {
        std::unordered_set<NodeId> seen;
        for (NodeId id : subset) {
            if (id >= table.size()) {
                throw PreconditionError("node id " + std::to_string(id) +
                                        " is outside the rank table");
            }
            if (!seen.insert(id).second) {
                throw PreconditionError("node id " + std::to_string(id) + " repeated in subset");
            }
        }
        candidates.assign(subset.begin(), subset.end());
        std::sort(candidates.begin(), candidates.end(),
                  [&](NodeId a, NodeId b) { return table.rank_of(a) < table.rank_of(b); });
    }
    if (k > candidates.size()) {
        throw PreconditionError("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(candidates.size()) + " ranked nodes");
    }
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(labels.display(candidates[i]));
    }
    return out;
}

} // namespace gmat
