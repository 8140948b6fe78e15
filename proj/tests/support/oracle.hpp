#pragma once

// Dense reference implementations used only by the tests. They build G
// directly from the edge list and use Eigen's direct solvers, sharing no code
// path with the matrix-free library routines they check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gmat/graph.hpp"

namespace gmat::testing {

inline Eigen::MatrixXd dense_google(const std::vector<Edge> &edges, std::size_t n, double alpha) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const Edge &e : edges) {
        if (e.src != e.dst) {
            a(e.dst, e.src) = 1.0;
        }
    }
    Eigen::MatrixXd g(a.rows(), a.cols());
    const double nn = static_cast<double>(n);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double kout = a.col(j).sum();
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double s = kout > 0 ? a(i, j) / kout : 1.0 / nn;
            g(i, j) = alpha * s + (1.0 - alpha) / nn;
        }
    }
    return g;
}

inline Eigen::MatrixXd dense_google(const DirectedGraph &g, double alpha) {
    return dense_google(g.edges(), g.node_count(), alpha);
}

/// Stationary vector from the direct solve (I - G) P = 0, sum(P) = 1.
inline Eigen::VectorXd dense_pagerank(const Eigen::MatrixXd &g) {
    const Eigen::Index n = g.rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - g;
    m.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    return m.fullPivLu().solve(rhs);
}

struct DenseReduced {
    Eigen::MatrixXd g_r;
    Eigen::MatrixXd g_rr;
    Eigen::MatrixXd g_pr;
    Eigen::MatrixXd g_qr;
    Eigen::MatrixXd scatter_inverse_times_gsr; // (1 - G_ss)^-1 G_sr
    double lambda_c = 0.0;
};

inline DenseReduced dense_reduced(const Eigen::MatrixXd &g, std::span<const NodeId> selection) {
    const auto n = g.rows();
    std::vector<Eigen::Index> r(selection.begin(), selection.end());
    std::vector<Eigen::Index> s;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::find(r.begin(), r.end(), i) == r.end()) {
            s.push_back(i);
        }
    }
    const auto nr = static_cast<Eigen::Index>(r.size());
    const auto ns = static_cast<Eigen::Index>(s.size());
    Eigen::MatrixXd grr(nr, nr), grs(nr, ns), gsr(ns, nr), gss(ns, ns);
    for (Eigen::Index i = 0; i < nr; ++i) {
        for (Eigen::Index j = 0; j < nr; ++j) grr(i, j) = g(r[i], r[j]);
        for (Eigen::Index j = 0; j < ns; ++j) grs(i, j) = g(r[i], s[j]);
    }
    for (Eigen::Index i = 0; i < ns; ++i) {
        for (Eigen::Index j = 0; j < nr; ++j) gsr(i, j) = g(s[i], r[j]);
        for (Eigen::Index j = 0; j < ns; ++j) gss(i, j) = g(s[i], s[j]);
    }

    DenseReduced out;
    out.g_rr = grr;
    const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(ns, ns) - gss;
    out.scatter_inverse_times_gsr = one_minus.fullPivLu().solve(gsr);
    out.g_r = grr + grs * out.scatter_inverse_times_gsr;

    // Leading eigenpair of the strictly positive G_ss: the eigenvalue of
    // largest real part is real and simple.
    Eigen::EigenSolver<Eigen::MatrixXd> right(gss);
    Eigen::EigenSolver<Eigen::MatrixXd> left(gss.transpose());
    auto lead = [](const Eigen::EigenSolver<Eigen::MatrixXd> &es) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k) {
            if (es.eigenvalues()(k).real() > es.eigenvalues()(best).real()) best = k;
        }
        return best;
    };
    const Eigen::Index kr = lead(right);
    const Eigen::Index kl = lead(left);
    out.lambda_c = right.eigenvalues()(kr).real();
    Eigen::VectorXd psi_r = right.eigenvectors().col(kr).real();
    Eigen::VectorXd psi_l = left.eigenvectors().col(kl).real();
    const Eigen::MatrixXd proj = psi_r * psi_l.transpose() / psi_l.dot(psi_r);
    out.g_pr = grs * proj * gsr / (1.0 - out.lambda_c);
    out.g_qr = out.g_r - out.g_rr - out.g_pr;
    return out;
}

/// Literal O(N^2) pair sum with sign(0) = 0.
inline double kendall_literal(std::span<const std::uint32_t> k1, std::span<const std::uint32_t> k2) {
    const std::size_t n = k1.size();
    auto sign = [](std::int64_t x) { return static_cast<double>((x > 0) - (x < 0)); };
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += 1.0 - sign(std::int64_t{k1[i]} - std::int64_t{k1[j]}) *
                             sign(std::int64_t{k2[i]} - std::int64_t{k2[j]});
        }
    }
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// Erdos-Renyi style digraph with a forced share of dangling nodes.
inline std::vector<Edge> random_edges(std::mt19937_64 &rng, std::size_t n, double p,
                                      double dangling_share = 0.0) {
    std::bernoulli_distribution link(p);
    std::bernoulli_distribution dangling(dangling_share);
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < n; ++j) {
        if (dangling(rng)) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != j && link(rng)) {
                edges.push_back({static_cast<NodeId>(j), static_cast<NodeId>(i)});
            }
        }
    }
    return edges;
}

inline std::vector<std::uint32_t> random_permutation(std::mt19937_64 &rng, std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i + 1);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace gmat::testing
