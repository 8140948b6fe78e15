#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gmat/google.hpp"
#include "gmat/graph.hpp"

namespace gmat {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Ordered set of the N_r nodes of interest. The order fixes the row and
/// column order of every reduced matrix.
class ReducedSelection {
public:
    /// Throws `PreconditionError` if `ids` is empty, repeats a node, or names a
    /// node outside [0, node_count).
    ReducedSelection(std::vector<NodeId> ids, std::size_t node_count);

    std::span<const NodeId> ids() const noexcept { return ids_; }
    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t scatter_count() const noexcept { return node_count_ - ids_.size(); }
    NodeId operator[](std::size_t k) const noexcept { return ids_[k]; }
    std::optional<std::size_t> index_of(NodeId node) const;

private:
    std::vector<NodeId> ids_;
    std::size_t node_count_;
    std::unordered_map<NodeId, std::size_t> index_;
};

struct ScatterOptions {
    double tol = kDefaultTolerance;
    std::size_t max_iter = 10000;
};

/// Leading eigenmode of G_ss: G_ss psi_right = lambda_c psi_right and
/// psi_left^T G_ss = lambda_c psi_left^T. Both vectors have length N and are
/// zero on the selection; psi_right sums to 1 and psi_left^T psi_right = 1.
struct ScatterSpectrum {
    double lambda_c = 0.0;
    std::vector<double> psi_right;
    std::vector<double> psi_left;
    SolverReport right_report;
    SolverReport left_report;
};

/**
 * The scattering network of a selection: the N_s = N - N_r complement nodes.
 *
 * Solves x = G_ss x + b matrix-free, where one product with G_ss is a full
 * operator application to a vector supported on the scatterers, followed by
 * zeroing the selection coordinates. The leading mode of G_ss is handled in
 * closed form through `spectrum()`; the remainder is summed as a Neumann
 * series of the projected operator and polished by residual correction, so
 * convergence does not degrade as lambda_c approaches 1.
 */
class ScatterNetwork {
public:
    /// Computes the leading eigenmode. Throws `PreconditionError` when the
    /// selection covers every node.
    ScatterNetwork(const GoogleOperator &op, const ReducedSelection &selection,
                   const ScatterOptions &options = {});

    const ScatterSpectrum &spectrum() const noexcept { return spectrum_; }
    bool spectrum_converged() const noexcept {
        return spectrum_.right_report.converged && spectrum_.left_report.converged;
    }

    /// b_j: the scatterer rows of column `column` of G (column is a selection
    /// index).
    std::vector<double> source_column(std::size_t column) const;

    /// x solving (1 - G_ss) x = b for b supported on the scatterers. `report`
    /// receives the G_ss application count and the final L1 residual
    /// ||b - (1 - G_ss) x||.
    std::vector<double> solve(std::span<const double> b, SolverReport *report = nullptr) const;

    /// x_j = (1 - G_ss)^-1 G_sr e_j.
    std::vector<double> solve_column(std::size_t column, SolverReport *report = nullptr) const {
        return solve(source_column(column), report);
    }

    /// out = G_ss v, for v zero on the selection.
    void apply_scatter(std::span<const double> v, std::span<double> out) const;

private:
    void apply_scatter_transpose(std::span<const double> v, std::span<double> out) const;
    void zero_selection(std::span<double> v) const;
    std::vector<double> approximate_inverse(std::span<const double> b, std::size_t &applications) const;

    const GoogleOperator *op_;
    const ReducedSelection *selection_;
    ScatterOptions options_;
    ScatterSpectrum spectrum_;
};

/// Convenience wrapper matching the other free-function entry points.
inline ScatterNetwork solve_scatter(const GoogleOperator &op, const ReducedSelection &selection,
                                    const ScatterOptions &options = {}) {
    return ScatterNetwork(op, selection, options);
}

/// G_rr: entry (i, j) is G(sel[i], sel[j]), teleportation and dangling terms
/// included.
DenseMatrix extract_grr(const GoogleOperator &op, const ReducedSelection &selection);

struct ReducedOptions {
    double tol = kDefaultTolerance;        ///< scatter solves and eigenmode
    std::size_t max_iter = 10000;          ///< per scatter solve / eigenmode
    double pagerank_tol = kDefaultTolerance;
    std::size_t pagerank_max_iter = kDefaultMaxIterations;
};

/**
 * Reduced Google matrix of a selection and its decomposition
 * G_R = G_rr + G_pr + G_qr. Every matrix uses column = source.
 *
 * G_pr is the rank-one leading-mode term
 * G_rs psi_R psi_L^T G_sr / ((1 - lambda_c) psi_L^T psi_R) and G_qr is the
 * remainder, so the three components sum to G_R exactly in floating point:
 * g_r(i, j) == (g_rr(i, j) + g_pr(i, j)) + g_qr(i, j).
 */
struct ReducedMatrices {
    std::vector<NodeId> selection;
    std::size_t node_count = 0;
    double alpha = 0.0;
    DenseMatrix g_r;
    DenseMatrix g_rr;
    DenseMatrix g_pr;
    DenseMatrix g_qr;
    std::vector<double> p_r;            ///< global PageRank restricted to the selection
    std::vector<double> p_r_normalized; ///< p_r / sum(p_r)
    double p_s_mass = 0.0;              ///< PageRank mass on the scatterers
    double pr_cosine = 0.0;             ///< cosine between the G_pr column direction and p_r
    ScatterSpectrum spectrum;
    SolverReport pagerank_report;
    std::vector<SolverReport> column_reports;
};

/// Throws `PreconditionError` unless 1 <= N_r < N, and `ConvergenceError` if
/// PageRank, the eigenmode, or any scatter solve misses its tolerance.
ReducedMatrices reduced_google(const GoogleOperator &op, const ReducedSelection &selection,
                               const ReducedOptions &options = {});

struct HiddenLink {
    std::size_t source = 0; ///< selection index
    std::size_t target = 0; ///< selection index
    double weight = 0.0;    ///< G_qr(target, source)
    bool purely_hidden = true;
};

struct SourceHiddenLinks {
    std::size_t source = 0;
    /// Eligible targets of this source by descending weight.
    std::vector<HiddenLink> ranked;
    /// Strongest eligible link with weight above the threshold, if any.
    std::optional<HiddenLink> strongest;
    /// Set when no eligible target clears the threshold.
    bool none_positive = false;
};

struct HiddenLinkReport {
    std::vector<SourceHiddenLinks> per_source;
    /// Every eligible pair across all sources, by descending weight (ties by
    /// source, then target).
    std::vector<HiddenLink> global;
};

/// Purely hidden links: G_qr entries (i, j), i != j, with no direct edge
/// sel[j] -> sel[i]. A source's strongest link must exceed `min_weight`;
/// passing the solve tolerance keeps rounding noise in a G_qr that vanishes
/// identically (a single scatterer, say) from being reported. Throws
/// `PreconditionError` when `rm` was computed on a different selection or
/// graph size.
HiddenLinkReport hidden_links(const ReducedMatrices &rm, const DirectedGraph &g,
                              const ReducedSelection &selection, double min_weight = 0.0);

} // namespace gmat
