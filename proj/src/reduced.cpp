#include "gmat/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmat/error.hpp"
#include "gmat/parallel.hpp"

namespace gmat {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return detail::blocked_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double l1(std::span<const double> a) {
    return detail::blocked_sum(a.size(), [&](std::size_t i) { return std::abs(a[i]); });
}

double l1_diff(std::span<const double> a, std::span<const double> b) {
    return detail::blocked_sum(a.size(), [&](std::size_t i) { return std::abs(a[i] - b[i]); });
}

} // namespace

ReducedSelection::ReducedSelection(std::vector<NodeId> ids, std::size_t node_count)
    : ids_(std::move(ids)), node_count_(node_count) {
    if (ids_.empty()) {
        throw PreconditionError("selection is empty");
    }
    index_.reserve(ids_.size());
    for (std::size_t k = 0; k < ids_.size(); ++k) {
        if (ids_[k] >= node_count_) {
            throw PreconditionError("selection node " + std::to_string(ids_[k]) +
                                    " is outside [0, " + std::to_string(node_count_) + ")");
        }
        if (!index_.emplace(ids_[k], k).second) {
            throw PreconditionError("selection node " + std::to_string(ids_[k]) + " is repeated");
        }
    }
}

std::optional<std::size_t> ReducedSelection::index_of(NodeId node) const {
    const auto it = index_.find(node);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

DenseMatrix extract_grr(const GoogleOperator &op, const ReducedSelection &selection) {
    if (selection.node_count() != op.size()) {
        throw PreconditionError("selection was built for a graph of a different size");
    }
    const std::size_t nr = selection.size();
    DenseMatrix grr(nr, nr);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            grr(i, j) = op.entry(selection[i], selection[j]);
        }
    }
    return grr;
}

ScatterNetwork::ScatterNetwork(const GoogleOperator &op, const ReducedSelection &selection,
                               const ScatterOptions &options)
    : op_(&op), selection_(&selection), options_(options) {
    if (selection.node_count() != op.size()) {
        throw PreconditionError("selection was built for a graph of a different size");
    }
    if (selection.size() >= op.size()) {
        throw PreconditionError("selection covers all " + std::to_string(op.size()) +
                                " nodes; there is no scattering network");
    }
    if (!(options.tol > 0.0)) {
        throw PreconditionError("tolerance must be positive");
    }

    const std::size_t n = op.size();
    const double start = 1.0 / static_cast<double>(selection.scatter_count());

    // Right Perron vector of G_ss by L1-normalised power iteration. G_ss is
    // strictly positive, so the leading eigenvalue is simple.
    std::vector<double> v(n, start);
    zero_selection(v);
    std::vector<double> w(n);
    double lambda = 0.0;
    SolverReport &right = spectrum_.right_report;
    while (right.iterations < options.max_iter) {
        apply_scatter(v, w);
        lambda = l1(w);
        for (double &x : w) {
            x /= lambda;
        }
        right.residual = l1_diff(v, w);
        v.swap(w);
        ++right.iterations;
        if (right.residual <= options.tol) {
            right.converged = true;
            break;
        }
    }
    spectrum_.lambda_c = lambda;
    spectrum_.psi_right = v;

    std::fill(v.begin(), v.end(), start);
    zero_selection(v);
    SolverReport &left = spectrum_.left_report;
    while (left.iterations < options.max_iter) {
        apply_scatter_transpose(v, w);
        const double norm = l1(w);
        for (double &x : w) {
            x /= norm;
        }
        left.residual = l1_diff(v, w);
        v.swap(w);
        ++left.iterations;
        if (left.residual <= options.tol) {
            left.converged = true;
            break;
        }
    }
    const double overlap = dot(v, spectrum_.psi_right);
    for (double &x : v) {
        x /= overlap;
    }
    spectrum_.psi_left = std::move(v);
}

void ScatterNetwork::zero_selection(std::span<double> v) const {
    for (NodeId id : selection_->ids()) {
        v[id] = 0.0;
    }
}

void ScatterNetwork::apply_scatter(std::span<const double> v, std::span<double> out) const {
    op_->apply(v, out);
    zero_selection(out);
}

void ScatterNetwork::apply_scatter_transpose(std::span<const double> v, std::span<double> out) const {
    op_->apply_transpose(v, out);
    zero_selection(out);
}

std::vector<double> ScatterNetwork::source_column(std::size_t column) const {
    const std::size_t n = op_->size();
    std::vector<double> e(n, 0.0);
    e[(*selection_)[column]] = 1.0;
    std::vector<double> b(n);
    op_->apply(e, b);
    zero_selection(b);
    return b;
}

// Leading mode in closed form plus the Neumann series of Q G_ss, where
// Q = 1 - psi_R psi_L^T projects the leading mode out.
std::vector<double> ScatterNetwork::approximate_inverse(std::span<const double> b,
                                                        std::size_t &applications) const {
    const auto &psi_r = spectrum_.psi_right;
    const auto &psi_l = spectrum_.psi_left;
    const std::size_t n = b.size();

    const double lead = dot(psi_l, b);
    const double scale = lead / (1.0 - spectrum_.lambda_c);
    std::vector<double> x(n);
    std::vector<double> term(n);
    for (std::size_t i = 0; i < n; ++i) {
        term[i] = b[i] - lead * psi_r[i];
        x[i] = scale * psi_r[i] + term[i];
    }
    std::vector<double> next(n);
    const double stop = 0.01 * options_.tol;
    while (applications < options_.max_iter && l1(term) > stop) {
        apply_scatter(term, next);
        ++applications;
        const double d = dot(psi_l, next);
        for (std::size_t i = 0; i < n; ++i) {
            term[i] = next[i] - d * psi_r[i];
            x[i] += term[i];
        }
    }
    return x;
}

std::vector<double> ScatterNetwork::solve(std::span<const double> b, SolverReport *report) const {
    const std::size_t n = op_->size();
    if (b.size() != n) {
        throw PreconditionError("right-hand side has length " + std::to_string(b.size()) +
                                ", expected " + std::to_string(n));
    }
    std::size_t applications = 0;
    std::vector<double> x = approximate_inverse(b, applications);
    std::vector<double> gx(n);
    std::vector<double> r(n);
    double residual = 0.0;
    for (;;) {
        apply_scatter(x, gx);
        ++applications;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = b[i] - x[i] + gx[i];
        }
        zero_selection(r);
        residual = l1(r);
        if (residual <= options_.tol || applications >= options_.max_iter) {
            break;
        }
        const std::vector<double> dx = approximate_inverse(r, applications);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += dx[i];
        }
    }
    if (report) {
        report->iterations = applications;
        report->residual = residual;
        report->converged = residual <= options_.tol;
    }
    return x;
}

ReducedMatrices reduced_google(const GoogleOperator &op, const ReducedSelection &selection,
                               const ReducedOptions &options) {
    const std::size_t n = op.size();
    const std::size_t nr = selection.size();
    if (selection.node_count() != n) {
        throw PreconditionError("selection was built for a graph of a different size");
    }
    if (nr >= n) {
        throw PreconditionError("selection covers all " + std::to_string(n) +
                                " nodes; the reduced matrix needs at least one scatterer");
    }

    ReducedMatrices rm;
    rm.selection.assign(selection.ids().begin(), selection.ids().end());
    rm.node_count = n;
    rm.alpha = op.alpha();

    const RankResult global = pagerank(op, options.pagerank_tol, options.pagerank_max_iter);
    rm.pagerank_report = global.report;
    if (!global.report.converged) {
        throw ConvergenceError("PageRank did not converge within " +
                                   std::to_string(options.pagerank_max_iter) + " iterations",
                               global.report.residual);
    }

    const ScatterNetwork scatter(op, selection, {options.tol, options.max_iter});
    if (!scatter.spectrum_converged()) {
        const auto &s = scatter.spectrum();
        throw ConvergenceError("leading eigenmode of G_ss did not converge within " +
                                   std::to_string(options.max_iter) + " iterations",
                               std::max(s.right_report.residual, s.left_report.residual));
    }
    rm.spectrum = scatter.spectrum();

    rm.g_rr = extract_grr(op, selection);

    DenseMatrix raw = rm.g_rr;
    std::vector<double> gx(n);
    rm.column_reports.resize(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        const std::vector<double> x = scatter.solve_column(j, &rm.column_reports[j]);
        if (!rm.column_reports[j].converged) {
            throw ConvergenceError("scatter solve for selection column " + std::to_string(j) +
                                       " did not converge within " +
                                       std::to_string(options.max_iter) + " applications",
                                   rm.column_reports[j].residual);
        }
        op.apply(x, gx);
        for (std::size_t i = 0; i < nr; ++i) {
            raw(i, j) += gx[selection[i]];
        }
    }

    // Leading-mode term: (G_rs psi_R)(psi_L^T G_sr) / (1 - lambda_c).
    std::vector<double> out(n);
    op.apply(rm.spectrum.psi_right, out);
    std::vector<double> lead_col(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        lead_col[i] = out[selection[i]];
    }
    op.apply_transpose(rm.spectrum.psi_left, out);
    std::vector<double> lead_row(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        lead_row[j] = out[selection[j]];
    }
    const double inv_gap = 1.0 / (1.0 - rm.spectrum.lambda_c);

    rm.g_pr = DenseMatrix(nr, nr);
    rm.g_qr = DenseMatrix(nr, nr);
    rm.g_r = DenseMatrix(nr, nr);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            rm.g_pr(i, j) = lead_col[i] * lead_row[j] * inv_gap;
            const double known = rm.g_rr(i, j) + rm.g_pr(i, j);
            rm.g_qr(i, j) = raw(i, j) - known;
            rm.g_r(i, j) = known + rm.g_qr(i, j);
        }
    }

    rm.p_r.resize(nr);
    double pr_sum = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        rm.p_r[i] = global.probabilities.values[selection[i]];
        pr_sum += rm.p_r[i];
    }
    rm.p_r_normalized.resize(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        rm.p_r_normalized[i] = rm.p_r[i] / pr_sum;
    }
    const double total = detail::blocked_sum(
        n, [&](std::size_t i) { return global.probabilities.values[i]; });
    rm.p_s_mass = total - pr_sum;

    double dot_lp = 0.0;
    double norm_l = 0.0;
    double norm_p = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        dot_lp += lead_col[i] * rm.p_r[i];
        norm_l += lead_col[i] * lead_col[i];
        norm_p += rm.p_r[i] * rm.p_r[i];
    }
    rm.pr_cosine = (norm_l > 0.0 && norm_p > 0.0) ? dot_lp / std::sqrt(norm_l * norm_p) : 0.0;
    return rm;
}

HiddenLinkReport hidden_links(const ReducedMatrices &rm, const DirectedGraph &g,
                              const ReducedSelection &selection, double min_weight) {
    const std::size_t nr = selection.size();
    if (!std::equal(rm.selection.begin(), rm.selection.end(), selection.ids().begin(),
                    selection.ids().end())) {
        throw PreconditionError("reduced matrices were computed for a different selection");
    }
    if (g.node_count() != selection.node_count() || g.node_count() != rm.node_count) {
        throw PreconditionError("graph size does not match the selection");
    }
    if (rm.g_qr.rows() != nr || rm.g_qr.cols() != nr) {
        throw PreconditionError("G_qr shape does not match the selection");
    }
    if (!(min_weight >= 0.0)) {
        throw PreconditionError("min_weight must be non-negative");
    }

    const auto stronger = [](const HiddenLink &a, const HiddenLink &b) {
        if (a.weight != b.weight) {
            return a.weight > b.weight;
        }
        if (a.source != b.source) {
            return a.source < b.source;
        }
        return a.target < b.target;
    };

    HiddenLinkReport report;
    report.per_source.resize(nr);
    for (std::size_t j = 0; j < nr; ++j) {
        SourceHiddenLinks &entry = report.per_source[j];
        entry.source = j;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == j || g.has_edge(selection[j], selection[i])) {
                continue;
            }
            entry.ranked.push_back({j, i, rm.g_qr(i, j), true});
        }
        std::sort(entry.ranked.begin(), entry.ranked.end(), stronger);
        if (!entry.ranked.empty() && entry.ranked.front().weight > min_weight) {
            entry.strongest = entry.ranked.front();
        } else {
            entry.none_positive = true;
        }
        report.global.insert(report.global.end(), entry.ranked.begin(), entry.ranked.end());
    }
    std::sort(report.global.begin(), report.global.end(), stronger);
    return report;
}

} // namespace gmat
