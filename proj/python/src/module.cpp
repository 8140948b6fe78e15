#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gmat/analytics.hpp"
#include "gmat/error.hpp"
#include "gmat/google.hpp"
#include "gmat/graph.hpp"
#include "gmat/io.hpp"
#include "gmat/parallel.hpp"
#include "gmat/reduced.hpp"

namespace py = pybind11;
using namespace gmat;

namespace {

using IdArray = py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>;

template <class T>
py::array_t<T> to_numpy(std::span<const T> v) {
    py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::array_t<double> to_numpy(const DenseMatrix &m) {
    py::array_t<double> a({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
    std::copy(m.data().begin(), m.data().end(), a.mutable_data());
    return a;
}

NodeId checked_id(std::int64_t v) {
    if (v < 0 || v > std::int64_t{0xffffffff}) throw PreconditionError("node id " + std::to_string(v) + " out of range");
    return static_cast<NodeId>(v);
}

DirectedGraph graph_from_array(const IdArray &edges, std::optional<std::size_t> n) {
    if (edges.size() != 0 && (edges.ndim() != 2 || edges.shape(1) != 2)) {
        throw PreconditionError("edges must have shape (m, 2)");
    }
    const auto m = edges.size() == 0 ? 0 : static_cast<std::size_t>(edges.shape(0));
    std::vector<Edge> list(m);
    std::size_t bound = 0;
    const auto *d = edges.data();
    for (std::size_t k = 0; k < m; ++k) {
        list[k] = {checked_id(d[2 * k]), checked_id(d[2 * k + 1])};
        bound = std::max<std::size_t>(bound, std::max(list[k].src, list[k].dst) + std::size_t{1});
    }
    return DirectedGraph::build(list, n.value_or(bound));
}

std::vector<NodeId> ids_from(const IdArray &a) {
    std::vector<NodeId> out(static_cast<std::size_t>(a.size()));
    for (py::ssize_t k = 0; k < a.size(); ++k) out[static_cast<std::size_t>(k)] = checked_id(a.data()[k]);
    return out;
}

py::dict report_dict(const SolverReport &r) {
    py::dict d;
    d["iterations"] = r.iterations;
    d["residual"] = r.residual;
    d["converged"] = r.converged;
    return d;
}

struct PyRanking {
    py::array_t<double> probabilities;
    py::array_t<std::uint32_t> ranks;
    py::array_t<NodeId> order;
    py::dict report;
    RankTable table;
};

PyRanking wrap(const RankResult &r) {
    return {to_numpy<double>(r.probabilities.values), to_numpy<std::uint32_t>(r.ranks.ranks()),
            to_numpy<NodeId>(r.ranks.order()), report_dict(r.report), r.ranks};
}

py::dict link_dict(const HiddenLink &h) {
    py::dict d;
    d["source"] = h.source;
    d["target"] = h.target;
    d["weight"] = h.weight;
    d["purely_hidden"] = h.purely_hidden;
    return d;
}

std::vector<Ranking> rankings_from(const py::dict &editions) {
    std::vector<Ranking> out;
    for (auto item : editions) {
        Ranking r;
        r.name = py::cast<std::string>(item.first);
        for (auto pair : py::cast<py::dict>(item.second)) {
            r.entities.push_back(py::cast<std::string>(pair.first));
            r.ranks.push_back(py::cast<Rank>(pair.second));
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Google-matrix analysis of directed networks";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());

    m.def("set_thread_count", &set_thread_count, py::arg("threads"));
    m.def("thread_count", &thread_count);

    py::class_<DirectedGraph>(m, "Graph")
        .def(py::init(&graph_from_array), py::arg("edges"), py::arg("n") = py::none(),
             "Graph from an (m, 2) array of (src, dst) ids; n defaults to max id + 1.")
        .def_static(
            "from_file",
            [](const std::string &path) {
                auto list = io::read_edge_file(path);
                return DirectedGraph::build(list.edges, list.node_bound);
            },
            py::arg("path"))
        .def_property_readonly("node_count", &DirectedGraph::node_count)
        .def_property_readonly("edge_count", &DirectedGraph::edge_count)
        .def("out_degree", [](const DirectedGraph &g, NodeId v) { return g.out_degree(v); })
        .def("in_degree", [](const DirectedGraph &g, NodeId v) { return g.in_degree(v); })
        .def("has_edge", &DirectedGraph::has_edge)
        .def("transpose", &DirectedGraph::transpose)
        .def("edges",
             [](const DirectedGraph &g) {
                 const auto e = g.edges();
                 py::array_t<std::int64_t> a({static_cast<py::ssize_t>(e.size()), py::ssize_t{2}});
                 auto *d = a.mutable_data();
                 for (std::size_t k = 0; k < e.size(); ++k) {
                     d[2 * k] = e[k].src;
                     d[2 * k + 1] = e[k].dst;
                 }
                 return a;
             })
        .def("stats",
             [](const DirectedGraph &g) {
                 const auto s = graph_stats(g);
                 py::dict d;
                 d["n"] = s.n;
                 d["edge_count"] = s.edge_count;
                 d["density"] = s.density;
                 d["mean_degree"] = s.mean_degree;
                 d["dangling_count"] = s.dangling_count;
                 return d;
             })
        .def("__repr__", [](const DirectedGraph &g) {
            return "<Graph n=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
        });

    py::class_<PyRanking>(m, "Ranking")
        .def_readonly("probabilities", &PyRanking::probabilities)
        .def_readonly("ranks", &PyRanking::ranks, "1-based rank of each node")
        .def_readonly("order", &PyRanking::order, "node ids by descending probability")
        .def_readonly("report", &PyRanking::report)
        .def("subset_ranks", [](const PyRanking &r, const IdArray &subset) {
            const auto local = subset_rank(r.table, ids_from(subset));
            return to_numpy<std::uint32_t>(local);
        });

    m.def(
        "pagerank",
        [](const DirectedGraph &g, double alpha, double tol, std::size_t max_iter) {
            RankResult r;
            {
                py::gil_scoped_release unlocked;
                r = pagerank(g, {alpha, tol, max_iter});
            }
            return wrap(r);
        },
        py::arg("graph"), py::arg("alpha") = kDefaultAlpha, py::arg("tol") = kDefaultTolerance,
        py::arg("max_iter") = kDefaultMaxIterations);
    m.def(
        "cheirank",
        [](const DirectedGraph &g, double alpha, double tol, std::size_t max_iter) {
            RankResult r;
            {
                py::gil_scoped_release unlocked;
                r = cheirank(g, {alpha, tol, max_iter});
            }
            return wrap(r);
        },
        py::arg("graph"), py::arg("alpha") = kDefaultAlpha, py::arg("tol") = kDefaultTolerance,
        py::arg("max_iter") = kDefaultMaxIterations);

    py::class_<ReducedMatrices>(m, "Reduced")
        .def_property_readonly("selection", [](const ReducedMatrices &r) { return to_numpy<NodeId>(r.selection); })
        .def_readonly("alpha", &ReducedMatrices::alpha)
        .def_property_readonly("g_r", [](const ReducedMatrices &r) { return to_numpy(r.g_r); })
        .def_property_readonly("g_rr", [](const ReducedMatrices &r) { return to_numpy(r.g_rr); })
        .def_property_readonly("g_pr", [](const ReducedMatrices &r) { return to_numpy(r.g_pr); })
        .def_property_readonly("g_qr", [](const ReducedMatrices &r) { return to_numpy(r.g_qr); })
        .def_property_readonly("p_r", [](const ReducedMatrices &r) { return to_numpy<double>(r.p_r); })
        .def_property_readonly("p_r_normalized",
                               [](const ReducedMatrices &r) { return to_numpy<double>(r.p_r_normalized); })
        .def_property_readonly("lambda_c", [](const ReducedMatrices &r) { return r.spectrum.lambda_c; })
        .def_readonly("pr_cosine", &ReducedMatrices::pr_cosine);

    m.def(
        "reduced_google",
        [](const DirectedGraph &g, const IdArray &selection, double alpha, double tol, std::size_t max_iter) {
            const GoogleOperator op(g, alpha);
            const ReducedSelection sel(ids_from(selection), g.node_count());
            ReducedOptions opts;
            opts.tol = tol;
            opts.max_iter = max_iter;
            opts.pagerank_tol = tol;
            return reduced_google(op, sel, opts);
        },
        py::arg("graph"), py::arg("selection"), py::arg("alpha") = kDefaultAlpha,
        py::arg("tol") = kDefaultTolerance, py::arg("max_iter") = 10000);

    m.def(
        "hidden_links",
        [](const ReducedMatrices &rm, const DirectedGraph &g, double min_weight) {
            const ReducedSelection sel(rm.selection, g.node_count());
            const auto rep = hidden_links(rm, g, sel, min_weight);
            py::list strongest, global;
            for (const auto &s : rep.per_source) strongest.append(s.strongest ? py::object(link_dict(*s.strongest)) : py::none());
            for (const auto &h : rep.global) global.append(link_dict(h));
            py::dict d;
            d["strongest"] = strongest;
            d["global"] = global;
            return d;
        },
        py::arg("reduced"), py::arg("graph"), py::arg("min_weight") = 0.0,
        "Per-source strongest hidden link (None when nothing clears min_weight) and the global ranked list.");

    m.def(
        "theta_scores",
        [](const py::dict &editions) {
            const auto eds = rankings_from(editions);
            py::list rows;
            for (const auto &e : theta_scores(eds).entries) rows.append(py::make_tuple(e.display_rank, e.entity, e.theta));
            return rows;
        },
        py::arg("editions"), "editions: {name: {entity: rank}}; returns [(display_rank, entity, theta)].");

    m.def(
        "kendall_distance",
        [](py::array_t<Rank, py::array::c_style | py::array::forcecast> a,
           py::array_t<Rank, py::array::c_style | py::array::forcecast> b) {
            return kendall_distance(std::span<const Rank>(a.data(), static_cast<std::size_t>(a.size())),
                                    std::span<const Rank>(b.data(), static_cast<std::size_t>(b.size())));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "density_grid",
        [](const PyRanking &pr, const PyRanking &cr) {
            const auto grid = density_grid(pr.table, cr.table);
            constexpr auto B = static_cast<py::ssize_t>(DensityGrid::kBins);
            py::array_t<std::uint64_t> a({B, B});
            auto *d = a.mutable_data();
            for (std::size_t ks = 0; ks < DensityGrid::kBins; ++ks)
                for (std::size_t k = 0; k < DensityGrid::kBins; ++k) d[ks * DensityGrid::kBins + k] = grid.count(k, ks);
            return py::make_tuple(a, to_numpy<double>(grid.edges()));
        },
        py::arg("pagerank"), py::arg("cheirank"), "Counts indexed [K* bin, K bin] and the shared log10 bin edges.");
}
