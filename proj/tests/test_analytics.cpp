#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>

#include "gmat/analytics.hpp"
#include "gmat/error.hpp"
#include "support/oracle.hpp"

using namespace gmat;

namespace {

Ranking make(std::string name, std::vector<std::string> entities, std::vector<Rank> ranks) {
    return {std::move(name), std::move(entities), std::move(ranks)};
}

} // namespace

TEST_CASE("theta: first everywhere is 1, last everywhere is 1/N_ph") {
    const std::vector<Ranking> eds{
        make("A", {"x", "y", "z"}, {1, 2, 3}),
        make("B", {"z", "y", "x"}, {3, 2, 1}),
    };
    const auto t = theta_scores(eds);
    REQUIRE(t.entries.size() == 3);
    CHECK(t.entries[0].entity == "x");
    CHECK(t.entries[0].theta == 1.0);
    CHECK(t.entries[2].entity == "z");
    CHECK(t.entries[2].theta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("theta: two entities, two editions") {
    const std::vector<Ranking> eds{make("A", {"p", "q"}, {1, 2}), make("B", {"p", "q"}, {2, 1})};
    const auto t = theta_scores(eds);
    CHECK(t.entries[0].theta == 0.75);
    CHECK(t.entries[1].theta == 0.75);
    // Equal Theta: both rank 1, ordered by label.
    CHECK(t.entries[0].entity == "p");
    CHECK(t.entries[0].display_rank == 1);
    CHECK(t.entries[1].display_rank == 1);
}

TEST_CASE("theta: competition display ranks repeat then skip") {
    // Scores 4 entities: a first; b, c, d tied; e last.
    const std::vector<Ranking> eds{
        make("E1", {"a", "b", "c", "d", "e"}, {1, 2, 3, 4, 5}),
        make("E2", {"a", "b", "c", "d", "e"}, {1, 3, 4, 2, 5}),
        make("E3", {"a", "b", "c", "d", "e"}, {1, 4, 2, 3, 5}),
    };
    const auto t = theta_scores(eds);
    std::vector<Rank> shown;
    for (const auto &e : t.entries) shown.push_back(e.display_rank);
    CHECK(shown == std::vector<Rank>{1, 2, 2, 2, 5});
    CHECK(t.entries[1].entity == "b");
    CHECK(t.entries[3].entity == "d");
}

TEST_CASE("theta: invariance and monotonicity") {
    std::mt19937_64 rng(91);
    const std::size_t nph = 30;
    std::vector<std::string> names(nph);
    for (std::size_t i = 0; i < nph; ++i) names[i] = "e" + std::to_string(i);
    std::vector<Ranking> eds;
    for (int e = 0; e < 5; ++e) eds.push_back(make("ed" + std::to_string(e), names, testing::random_permutation(rng, nph)));

    auto by_entity = [](const ThetaTable &t) {
        std::unordered_map<std::string, double> m;
        for (const auto &e : t.entries) m[e.entity] = e.theta;
        return m;
    };
    const auto base = by_entity(theta_scores(eds));
    auto shuffled = eds;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(by_entity(theta_scores(shuffled)) == base);

    // Swapping ranks so one entity drops strictly lowers its Theta.
    auto worse = eds;
    auto &r = worse[0].ranks;
    const auto top = static_cast<std::size_t>(std::find(r.begin(), r.end(), Rank{1}) - r.begin());
    const auto second = static_cast<std::size_t>(std::find(r.begin(), r.end(), Rank{2}) - r.begin());
    std::swap(r[top], r[second]);
    CHECK(by_entity(theta_scores(worse)).at(names[top]) < base.at(names[top]));
}

TEST_CASE("theta: validation lists every mismatch") {
    const std::vector<Ranking> eds{
        make("A", {"x", "y", "z"}, {1, 2, 3}),
        make("B", {"x", "w", "v"}, {1, 2, 3}),
    };
    try {
        theta_scores(eds);
        FAIL("expected mismatch");
    } catch (const PreconditionError &e) {
        const std::string msg = e.what();
        for (const char *name : {"y", "z", "w", "v"}) CHECK(msg.find(std::string("'") + name + "'") != std::string::npos);
    }
    const std::vector<Ranking> bad_rank{make("A", {"x", "y"}, {1, 3})};
    CHECK_THROWS_AS(theta_scores(bad_rank), PreconditionError);
    const std::vector<Ranking> dup_rank{make("A", {"x", "y"}, {1, 1})};
    CHECK_THROWS_AS(theta_scores(dup_rank), PreconditionError);
    CHECK_THROWS_AS(theta_scores({}), PreconditionError);
}

TEST_CASE("kendall: identities and the worked example") {
    const std::vector<Rank> id{1, 2, 3, 4, 5};
    const std::vector<Rank> rev{5, 4, 3, 2, 1};
    CHECK(kendall_distance(id, id) == 0.0);
    CHECK(kendall_distance(id, rev) == 1.0);
    CHECK(kendall_distance(std::vector<Rank>{1, 2, 3}, std::vector<Rank>{1, 3, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(kendall_distance(std::vector<Rank>{1}, std::vector<Rank>{1}), PreconditionError);
    CHECK_THROWS_AS(kendall_distance(std::vector<Rank>{1, 2}, std::vector<Rank>{1, 2, 3}), PreconditionError);
}

TEST_CASE("kendall: ties follow the literal sign(0) = 0 sum") {
    const std::vector<Rank> a{1, 1, 3, 4};
    const std::vector<Rank> b{2, 1, 3, 3};
    CHECK(kendall_distance(a, b) == doctest::Approx(testing::kendall_literal(a, b)).epsilon(1e-15));
    std::mt19937_64 rng(97);
    std::uniform_int_distribution<Rank> small(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<Rank> x(n), y(n);
        for (auto &v : x) v = small(rng);
        for (auto &v : y) v = small(rng);
        CHECK(std::abs(kendall_distance(x, y) - testing::kendall_literal(x, y)) <= 1e-12);
        CHECK(kendall_distance(x, y) == kendall_distance(y, x));
    }
}

TEST_CASE("kendall on labelled rankings aligns by entity") {
    const auto a = make("A", {"x", "y", "z"}, {1, 2, 3});
    const auto b = make("B", {"z", "x", "y"}, {1, 2, 3});
    // b orders z, x, y: pairs (x,y) agree; (x,z), (y,z) disagree.
    CHECK(kendall_distance(a, b) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(kendall_distance(a, make("C", {"x", "y", "q"}, {1, 2, 3})), PreconditionError);
}

TEST_CASE("restrict_common") {
    const auto a = make("A", {"x", "y", "z"}, {1, 2, 3});
    SUBCASE("identical sets") {
        const auto [ra, rb] = restrict_common(a, a);
        CHECK(ra.entities == a.entities);
        CHECK(ra.ranks == a.ranks);
        CHECK(rb.ranks == a.ranks);
    }
    SUBCASE("two shared items in opposite order") {
        const auto b = make("B", {"y", "w", "x"}, {1, 2, 3});
        const auto [ra, rb] = restrict_common(a, b);
        CHECK(ra.entities == std::vector<std::string>{"x", "y"});
        CHECK(kendall_distance(ra.ranks, rb.ranks) == 1.0);
    }
    SUBCASE("too small an overlap") {
        CHECK_THROWS_AS(restrict_common(a, make("B", {"x", "q"}, {1, 2})), PreconditionError);
    }
}

TEST_CASE("restrict_common matches a filter-and-rerank oracle") {
    std::mt19937_64 rng(101);
    std::vector<std::string> pool(30);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = "p" + std::to_string(i);
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::vector<std::string> ea(pool.begin(), pool.begin() + 20);
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::vector<std::string> eb(pool.begin(), pool.begin() + 15);
        const auto a = make("A", ea, testing::random_permutation(rng, 20));
        const auto b = make("B", eb, testing::random_permutation(rng, 15));

        std::vector<std::string> common;
        for (const auto &e : ea)
            if (std::find(eb.begin(), eb.end(), e) != eb.end()) common.push_back(e);
        if (common.size() < 2) continue;
        auto rerank = [&](const Ranking &r) {
            std::vector<std::pair<Rank, std::string>> kept;
            for (std::size_t k = 0; k < r.entities.size(); ++k)
                if (std::find(common.begin(), common.end(), r.entities[k]) != common.end()) kept.push_back({r.ranks[k], r.entities[k]});
            std::sort(kept.begin(), kept.end());
            std::unordered_map<std::string, Rank> m;
            for (std::size_t k = 0; k < kept.size(); ++k) m[kept[k].second] = static_cast<Rank>(k + 1);
            return m;
        };
        const auto oa = rerank(a);
        const auto ob = rerank(b);
        const auto [ra, rb] = restrict_common(a, b);
        REQUIRE(ra.entities == common);
        for (std::size_t k = 0; k < common.size(); ++k) {
            CHECK(ra.ranks[k] == oa.at(common[k]));
            CHECK(rb.ranks[k] == ob.at(common[k]));
        }
    }
}

TEST_CASE("density grid") {
    SUBCASE("origin and far corner") {
        CHECK(DensityGrid::bin_of(1, 1000) == 0);
        CHECK(DensityGrid::bin_of(1000, 1000) == 99);
        CHECK(DensityGrid::bin_of(10, 100) == 50);
        CHECK(DensityGrid::bin_of(9, 100) == 47);
    }
    SUBCASE("partition of random rank tables") {
        std::mt19937_64 rng(103);
        std::uniform_real_distribution<double> u(0, 1);
        for (std::size_t n : {1u, 2u, 17u, 1000u, 5000u}) {
            std::vector<double> p(n), q(n);
            for (auto &x : p) x = u(rng);
            for (auto &x : q) x = u(rng);
            const RankTable pr(p), cr(q);
            const auto grid = density_grid(pr, cr);
            CHECK(grid.total() == n);
            CHECK(grid.edges().size() == DensityGrid::kBins + 1);
            const NodeId top = pr.order()[0];
            CHECK(grid.count(0, DensityGrid::bin_of(cr.rank_of(top), n)) >= 1);
        }
    }
    SUBCASE("size mismatch") {
        const std::vector<double> a{0.5, 0.5}, b{1.0};
        CHECK_THROWS_AS(density_grid(RankTable(a), RankTable(b)), PreconditionError);
    }
}

TEST_CASE("topk_table") {
    const std::vector<double> p{0.1, 0.5, 0.4};
    const RankTable t(p);
    NodeLabelMap labels;
    labels.add(1, "Aristotle");
    CHECK(topk_table(t, labels, 1) == std::vector<std::string>{"Aristotle"});
    CHECK(topk_table(t, labels, 3) == std::vector<std::string>{"Aristotle", "2", "0"});
    CHECK(topk_table(t, labels, 2, std::vector<NodeId>{0, 2}) == std::vector<std::string>{"2", "0"});
    CHECK_THROWS_AS(topk_table(t, labels, 4), PreconditionError);
}
