#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "gmat/error.hpp"
#include "gmat/reduced.hpp"
#include "support/oracle.hpp"

using namespace gmat;

namespace {

ReducedOptions tight() {
    ReducedOptions o;
    o.tol = 1e-12;
    o.pagerank_tol = 1e-13;
    return o;
}

std::vector<NodeId> random_selection(std::mt19937_64 &rng, std::size_t n, std::size_t nr) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(nr);
    return all;
}

double max_abs_diff(const DenseMatrix &a, const Eigen::MatrixXd &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    return m;
}

} // namespace

TEST_CASE("selection validation") {
    CHECK_THROWS_AS(ReducedSelection({}, 5), PreconditionError);
    CHECK_THROWS_AS(ReducedSelection({1, 1}, 5), PreconditionError);
    CHECK_THROWS_AS(ReducedSelection({7}, 5), PreconditionError);
    const ReducedSelection sel({4, 2}, 5);
    CHECK(sel.index_of(2) == 1);
    CHECK_FALSE(sel.index_of(3).has_value());
    CHECK(sel.scatter_count() == 3);
}

TEST_CASE("extract_grr") {
    std::mt19937_64 rng(61);
    const std::size_t n = 12;
    const auto edges = testing::random_edges(rng, n, 0.2, 0.25);
    const auto g = DirectedGraph::build(edges, n);
    const GoogleOperator op(g, 0.85);
    const auto dense = testing::dense_google(edges, n, 0.85);

    SUBCASE("full selection reproduces G") {
        std::vector<NodeId> all(n);
        std::iota(all.begin(), all.end(), NodeId{0});
        const auto grr = extract_grr(op, ReducedSelection(all, n));
        CHECK(max_abs_diff(grr, dense) <= 1e-14);
    }
    SUBCASE("unlinked pair and dangling column") {
        const auto path = DirectedGraph::build(std::vector<Edge>{{0, 1}, {1, 2}}, 4);
        const GoogleOperator pop(path, 0.85);
        const auto grr = extract_grr(pop, ReducedSelection({0, 2, 3}, 4));
        CHECK(grr(1, 0) == doctest::Approx(0.15 / 4).epsilon(1e-15)); // 0 -/-> 2
        CHECK(grr(0, 2) == doctest::Approx(0.25).epsilon(1e-15));      // node 3 dangling
        CHECK(grr(1, 2) == doctest::Approx(0.25).epsilon(1e-15));
    }
}

TEST_CASE("scatter solve on a 4-node graph against the dense 2x2 solve") {
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}, {2, 0}};
    const auto g = DirectedGraph::build(edges, 4);
    const GoogleOperator op(g, 0.85);
    const ReducedSelection sel({0, 2}, 4);
    const ScatterNetwork net(op, sel, {1e-13, 10000});
    CHECK(net.spectrum_converged());
    const auto oracle = testing::dense_reduced(testing::dense_google(edges, 4, 0.85), sel.ids());
    CHECK(net.spectrum().lambda_c == doctest::Approx(oracle.lambda_c).epsilon(1e-10));
    CHECK(net.spectrum().lambda_c < 1.0);
    const std::vector<NodeId> scat{1, 3};
    for (std::size_t j = 0; j < 2; ++j) {
        SolverReport rep;
        const auto x = net.solve_column(j, &rep);
        CHECK(rep.converged);
        CHECK(x[0] == 0.0);
        CHECK(x[2] == 0.0);
        for (std::size_t s = 0; s < 2; ++s)
            CHECK(std::abs(x[scat[s]] - oracle.scatter_inverse_times_gsr(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j))) <= 1e-8);
    }
}

TEST_CASE("scatter solutions: column sums and leading eigenvalue below one") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 3 + rng() % 48;
        const auto edges = testing::random_edges(rng, n, 0.1, 0.2);
        const auto g = DirectedGraph::build(edges, n);
        const GoogleOperator op(g, 0.85);
        const std::size_t nr = 1 + rng() % (n - 1);
        const ReducedSelection sel(random_selection(rng, n, nr), n);
        const ScatterNetwork net(op, sel, {1e-12, 10000});
        CHECK(net.spectrum().lambda_c < 1.0);
        const auto oracle = testing::dense_reduced(testing::dense_google(edges, n, 0.85), sel.ids());
        for (std::size_t j = 0; j < nr; ++j) {
            const auto x = net.solve_column(j);
            const double got = std::accumulate(x.begin(), x.end(), 0.0);
            CHECK(got == doctest::Approx(oracle.scatter_inverse_times_gsr.col(static_cast<Eigen::Index>(j)).sum()).epsilon(1e-9));
        }
    }
}

TEST_CASE("scatter network needs at least one scatterer") {
    const auto g = DirectedGraph::build(std::vector<Edge>{{0, 1}}, 2);
    const GoogleOperator op(g);
    const ReducedSelection all({0, 1}, 2);
    CHECK_THROWS_AS(ScatterNetwork(op, all), PreconditionError);
    CHECK_THROWS_AS(reduced_google(op, all), PreconditionError);
}

TEST_CASE("reduced_google matches the dense oracle and its invariants") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng() % 48;
        const auto edges = testing::random_edges(rng, n, 0.02 + u(rng) * 0.2, u(rng) * 0.3);
        const auto g = DirectedGraph::build(edges, n);
        const GoogleOperator op(g, 0.85);
        const std::size_t nr = 1 + rng() % (n - 1);
        const ReducedSelection sel(random_selection(rng, n, nr), n);
        const auto rm = reduced_google(op, sel, tight());
        const auto oracle = testing::dense_reduced(testing::dense_google(edges, n, 0.85), sel.ids());

        CHECK(max_abs_diff(rm.g_r, oracle.g_r) <= 1e-8);
        CHECK(max_abs_diff(rm.g_rr, oracle.g_rr) <= 1e-14);
        CHECK(max_abs_diff(rm.g_pr, oracle.g_pr) <= 1e-8);
        CHECK(max_abs_diff(rm.g_qr, oracle.g_qr) <= 1e-8);
        CHECK(rm.spectrum.lambda_c == doctest::Approx(oracle.lambda_c).epsilon(1e-9));

        for (std::size_t i = 0; i < nr; ++i) {
            double fixed = 0.0;
            for (std::size_t j = 0; j < nr; ++j) {
                CHECK(rm.g_r(i, j) == (rm.g_rr(i, j) + rm.g_pr(i, j)) + rm.g_qr(i, j));
                fixed += rm.g_r(i, j) * rm.p_r_normalized[j];
            }
            CHECK(std::abs(fixed - rm.p_r_normalized[i]) <= 1e-8);
        }
        for (std::size_t j = 0; j < nr; ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < nr; ++i) col += rm.g_r(i, j);
            CHECK(std::abs(col - 1.0) <= 1e-8);
        }
        CHECK(rm.pr_cosine > 0.0);
        CHECK(rm.pr_cosine <= 1.0 + 1e-12);
    }
}

TEST_CASE("reduced_google with a single scatterer") {
    std::mt19937_64 rng(73);
    const std::size_t n = 9;
    const auto edges = testing::random_edges(rng, n, 0.3, 0.1);
    std::vector<NodeId> ids(n - 1);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    const ReducedSelection sel(ids, n);
    const auto g = DirectedGraph::build(edges, n);
    const GoogleOperator op(g, 0.85);
    const auto rm = reduced_google(op, sel, tight());
    const auto oracle = testing::dense_reduced(testing::dense_google(edges, n, 0.85), sel.ids());
    CHECK(max_abs_diff(rm.g_r, oracle.g_r) <= 1e-8);
    CHECK(rm.spectrum.lambda_c == doctest::Approx(oracle.lambda_c).epsilon(1e-12));
}

TEST_CASE("G_pr is rank one") {
    std::mt19937_64 rng(79);
    const std::size_t n = 40;
    const auto edges = testing::random_edges(rng, n, 0.08, 0.1);
    const auto g = DirectedGraph::build(edges, n);
    const GoogleOperator op(g, 0.85);
    const ReducedSelection sel(random_selection(rng, n, 8), n);
    const auto rm = reduced_google(op, sel, tight());
    for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = a + 1; b < 8; ++b) {
            // Columns a and b are parallel iff every 2x2 minor vanishes.
            for (std::size_t i = 0; i < 8; ++i) {
                for (std::size_t k = i + 1; k < 8; ++k) {
                    const double minor = rm.g_pr(i, a) * rm.g_pr(k, b) - rm.g_pr(k, a) * rm.g_pr(i, b);
                    const double scale = std::abs(rm.g_pr(i, a) * rm.g_pr(k, b)) + std::abs(rm.g_pr(k, a) * rm.g_pr(i, b));
                    CHECK(std::abs(minor) <= 1e-8 * scale);
                }
            }
        }
    }
}

TEST_CASE("hidden links: indirect path a -> x -> b") {
    // a=0, x=1, b=2; extra nodes keep the scatterer block nontrivial.
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 3}, {3, 5}};
    const auto g = DirectedGraph::build(edges, 6);
    const GoogleOperator op(g, 0.85);
    const ReducedSelection sel({0, 2}, 6);
    const auto rm = reduced_google(op, sel, tight());
    const auto report = hidden_links(rm, g, sel);
    REQUIRE(report.per_source.size() == 2);
    REQUIRE(report.per_source[0].strongest.has_value());
    CHECK(report.per_source[0].strongest->target == 1);
    CHECK(report.per_source[0].strongest->purely_hidden);

    const auto oracle = testing::dense_reduced(testing::dense_google(edges, 6, 0.85), sel.ids());
    CHECK(oracle.g_qr(1, 0) > 0.0);
    CHECK(report.per_source[0].strongest->weight == doctest::Approx(oracle.g_qr(1, 0)).epsilon(1e-8));
}

TEST_CASE("hidden links: a source linking to every other member has none") {
    const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {3, 0}, {2, 3}};
    const auto g = DirectedGraph::build(edges, 4);
    const GoogleOperator op(g, 0.85);
    const ReducedSelection sel({0, 1, 2}, 4);
    const auto rm = reduced_google(op, sel, tight());
    const auto report = hidden_links(rm, g, sel);
    CHECK(report.per_source[0].ranked.empty());
    CHECK_FALSE(report.per_source[0].strongest.has_value());
    CHECK(report.per_source[0].none_positive);
}

TEST_CASE("hidden links reject mismatched inputs") {
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}};
    const auto g = DirectedGraph::build(edges, 3);
    const GoogleOperator op(g, 0.85);
    const ReducedSelection sel({0, 1}, 3);
    const auto rm = reduced_google(op, sel);
    CHECK_THROWS_AS(hidden_links(rm, g, ReducedSelection({1, 0}, 3)), PreconditionError);
    const auto bigger = DirectedGraph::build(edges, 4);
    CHECK_THROWS_AS(hidden_links(rm, bigger, ReducedSelection({0, 1}, 4)), PreconditionError);
}

TEST_CASE("hidden links equal a brute-force scan of the oracle G_qr") {
    // Columns whose winner is within oracle tolerance of zero or of the
    // runner-up are ambiguous (G_qr vanishes identically with one scatterer)
    // and are skipped; the rest must match index for index.
    std::mt19937_64 rng(83);
    std::size_t decided = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 5 + rng() % 6;
        const auto edges = testing::random_edges(rng, n, 0.3, 0.1);
        const auto g = DirectedGraph::build(edges, n);
        const GoogleOperator op(g, 0.85);
        const std::size_t nr = 2 + rng() % (n - 3);
        const ReducedSelection sel(random_selection(rng, n, nr), n);
        const auto rm = reduced_google(op, sel, tight());
        const auto report = hidden_links(rm, g, sel);
        const auto oracle = testing::dense_reduced(testing::dense_google(edges, n, 0.85), sel.ids());
        for (std::size_t j = 0; j < nr; ++j) {
            std::vector<std::pair<double, std::size_t>> eligible;
            for (std::size_t i = 0; i < nr; ++i) {
                if (i == j || g.has_edge(sel[j], sel[i])) continue;
                eligible.push_back({oracle.g_qr(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), i});
            }
            std::sort(eligible.begin(), eligible.end(), std::greater<>());
            CHECK(report.per_source[j].ranked.size() == eligible.size());
            if (eligible.empty()) {
                CHECK(report.per_source[j].none_positive);
                continue;
            }
            const double top = eligible[0].first;
            const double gap = eligible.size() > 1 ? top - eligible[1].first : 1.0;
            if (std::abs(top) < 1e-8 || gap < 1e-8) continue;
            ++decided;
            const auto &got = report.per_source[j].strongest;
            CHECK(got.has_value() == (top > 0.0));
            if (got) CHECK(got->target == eligible[0].second);
        }
    }
    CHECK(decided >= 40);
}
