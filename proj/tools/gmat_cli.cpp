// gmat: Google-matrix analysis of directed networks.

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gmat/analytics.hpp"
#include "gmat/error.hpp"
#include "gmat/google.hpp"
#include "gmat/graph.hpp"
#include "gmat/io.hpp"
#include "gmat/labels.hpp"
#include "gmat/parallel.hpp"
#include "gmat/reduced.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kPrecondition = 3,
    kNotConverged = 4,
    kUsage = 64,
};

struct RunConfig {
    double alpha = gmat::kDefaultAlpha;
    double tol = gmat::kDefaultTolerance;
    std::size_t max_iter = gmat::kDefaultMaxIterations;
    std::size_t scatter_max_iter = 10000;
    int threads = 0;
    std::string edges;
    std::string labels;
    std::string selection;
    std::string manifest;
    std::string out = ".";
    std::string format = "csv";
    std::string kind = "pagerank";
    std::size_t k = 10;
};

std::string fmt(const char *spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string prob(double v) { return fmt("%.8g", v); }

std::string sha256_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gmat::Error("cannot open " + path.string());
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    static const char *hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

class Run {
public:
    Run(std::string command, const RunConfig &cfg) : command_(std::move(command)), cfg_(cfg) {
        fs::create_directories(cfg.out);
    }

    fs::path path(const std::string &name) const { return fs::path(cfg_.out) / name; }

    std::ofstream open(const std::string &name) {
        std::ofstream f(path(name), std::ios::binary);
        if (!f) throw gmat::Error("cannot write " + path(name).string());
        written_.push_back(name);
        return f;
    }

    void write_json(const std::string &name, const json &j) { open(name) << j.dump(2) << '\n'; }

    void input(const std::string &role, const fs::path &p) {
        inputs_.push_back({{"role", role},
                           {"path", p.string()},
                           {"bytes", fs::file_size(p)},
                           {"sha256", sha256_file(p)}});
    }

    void finish(const json &extra = json::object()) {
        json c;
        c["command"] = command_;
        c["alpha"] = cfg_.alpha;
        c["tol"] = cfg_.tol;
        c["max_iter"] = cfg_.max_iter;
        c["scatter_max_iter"] = cfg_.scatter_max_iter;
        c["threads"] = cfg_.threads == 0 ? json("auto") : json(cfg_.threads);
        c["format"] = cfg_.format;
        c["edges"] = cfg_.edges;
        c["labels"] = cfg_.labels;
        c["selection"] = cfg_.selection;
        c["manifest"] = cfg_.manifest;
        c["kind"] = cfg_.kind;
        c["k"] = cfg_.k;
        c["inputs"] = inputs_;
        c["outputs"] = written_;
        for (auto it = extra.begin(); it != extra.end(); ++it) c[it.key()] = it.value();
        std::ofstream(path("config.json"), std::ios::binary) << c.dump(2) << '\n';
    }

private:
    std::string command_;
    const RunConfig &cfg_;
    json inputs_ = json::array();
    std::vector<std::string> written_;
};

struct Network {
    gmat::DirectedGraph graph;
    gmat::NodeLabelMap labels;
    gmat::BuildDiagnostics diagnostics;
};

Network load_network(const RunConfig &cfg, Run &run) {
    if (cfg.edges.empty()) throw gmat::PreconditionError("--edges is required");
    run.input("edges", cfg.edges);
    Network net;
    if (!cfg.labels.empty()) {
        run.input("labels", cfg.labels);
        net.labels = gmat::io::read_label_file(cfg.labels);
    }
    auto list = gmat::io::read_edge_file(cfg.edges);
    const std::size_t n = std::max(list.node_bound, net.labels.id_bound());
    net.graph = gmat::DirectedGraph::build(list.edges, n, &net.diagnostics);
    return net;
}

std::vector<gmat::NodeId> load_selection(const RunConfig &cfg, Run &run, const Network &net) {
    if (cfg.selection.empty()) return {};
    run.input("selection", cfg.selection);
    return gmat::io::read_selection_file(cfg.selection, net.labels, net.graph.node_count());
}

json report_json(const gmat::SolverReport &r) {
    return {{"iterations", r.iterations}, {"residual", r.residual}, {"converged", r.converged}};
}

gmat::PowerOptions power_options(const RunConfig &cfg) {
    return {cfg.alpha, cfg.tol, cfg.max_iter};
}

void not_converged_note(std::ostream &out, const gmat::SolverReport &r) {
    if (!r.converged) {
        out << "# NOT CONVERGED after " << r.iterations << " iterations, residual "
            << fmt("%.3e", r.residual) << '\n';
    }
}

// pagerank / cheirank

int cmd_rank(const RunConfig &cfg, gmat::RankKind kind) {
    const std::string name = kind == gmat::RankKind::pagerank ? "pagerank" : "cheirank";
    Run run(name, cfg);
    const Network net = load_network(cfg, run);
    const auto selection = load_selection(cfg, run, net);
    const auto result = kind == gmat::RankKind::pagerank ? gmat::pagerank(net.graph, power_options(cfg))
                                                         : gmat::cheirank(net.graph, power_options(cfg));
    const auto &p = result.probabilities.values;
    const auto order = result.ranks.order();

    if (cfg.format == "csv") {
        auto f = run.open(name + ".csv");
        not_converged_note(f, result.report);
        f << "rank,node_id,label,probability\n";
        for (std::size_t r = 0; r < order.size(); ++r) {
            const auto id = order[r];
            const auto label = net.labels.label(id);
            f << r + 1 << ',' << id << ',' << (label ? gmat::io::csv_field(*label) : "") << ','
              << prob(p[id]) << '\n';
        }
    }
    json j;
    j["kind"] = name;
    j["report"] = report_json(result.report);
    j["node_count"] = p.size();
    {
        json rows = json::array();
        for (std::size_t r = 0; r < order.size(); ++r) {
            const auto id = order[r];
            rows.push_back({{"rank", r + 1},
                            {"node_id", id},
                            {"label", std::string(net.labels.label(id).value_or(""))},
                            {"probability", p[id]}});
        }
        j["ranking"] = std::move(rows);
    }

    if (!selection.empty()) {
        const auto local = gmat::subset_rank(result.ranks, selection);
        std::vector<std::size_t> idx(selection.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[local[k] - 1] = k;
        json rows = json::array();
        std::ostringstream csv;
        csv << "subset_rank,global_rank,node_id,label,probability\n";
        for (std::size_t k : idx) {
            const auto id = selection[k];
            const std::string label = net.labels.display(id);
            csv << local[k] << ',' << result.ranks.rank_of(id) << ',' << id << ','
                << gmat::io::csv_field(label) << ',' << prob(p[id]) << '\n';
            rows.push_back({{"subset_rank", local[k]},
                            {"global_rank", result.ranks.rank_of(id)},
                            {"node_id", id},
                            {"label", label},
                            {"probability", p[id]}});
        }
        if (cfg.format == "csv") {
            auto f = run.open(name + "_subset.csv");
            not_converged_note(f, result.report);
            f << csv.str();
        }
        j["subset"] = std::move(rows);
    }
    run.write_json(name + ".json", j);
    run.finish();
    if (!result.report.converged) {
        std::cerr << "gmat: " << name << " did not converge within " << result.report.iterations
                  << " iterations (residual " << result.report.residual << "); output flagged\n";
        return kNotConverged;
    }
    return kOk;
}

// reduced / hidden-links

void write_matrix(Run &run, const std::string &name, const std::string &title,
                  const gmat::DenseMatrix &m, const std::vector<std::string> &labels) {
    auto f = run.open(name + ".csv");
    f << "# " << title << "; entry (row i, column j) is the transition from column node j to row node i\n";
    f << "target\\source";
    for (const auto &l : labels) f << ',' << gmat::io::csv_field(l);
    f << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        f << gmat::io::csv_field(labels[i]);
        for (std::size_t j = 0; j < m.cols(); ++j) f << ',' << fmt("%.10g", m(i, j));
        f << '\n';
    }
}

json matrix_json(const gmat::DenseMatrix &m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_hidden(Run &run, const RunConfig &cfg, const gmat::HiddenLinkReport &report,
                  const std::vector<std::string> &labels) {
    auto row = [&](std::ostream &f, const gmat::HiddenLink &h) {
        f << gmat::io::csv_field(labels[h.source]) << ',' << gmat::io::csv_field(labels[h.target]) << ','
          << fmt("%.10g", h.weight) << ',' << (h.purely_hidden ? "true" : "false") << '\n';
    };
    auto as_json = [&](const gmat::HiddenLink &h) {
        return json{{"source_label", labels[h.source]},
                    {"target_label", labels[h.target]},
                    {"weight", h.weight},
                    {"purely_hidden", h.purely_hidden}};
    };
    json per_source = json::array();
    json global = json::array();
    for (const auto &s : report.per_source) {
        json entry{{"source_label", labels[s.source]}, {"none_positive", s.none_positive}};
        entry["strongest"] = s.strongest ? as_json(*s.strongest) : json(nullptr);
        per_source.push_back(std::move(entry));
    }
    for (const auto &h : report.global) global.push_back(as_json(h));

    if (cfg.format == "csv") {
        auto f = run.open("hidden_links.csv");
        f << "source_label,target_label,weight,purely_hidden\n";
        for (const auto &s : report.per_source) {
            if (s.strongest) {
                row(f, *s.strongest);
            } else {
                f << gmat::io::csv_field(labels[s.source]) << ",,,\n";
            }
        }
        auto g = run.open("hidden_links_global.csv");
        g << "source_label,target_label,weight,purely_hidden\n";
        for (const auto &h : report.global) row(g, h);
    }
    run.write_json("hidden_links.json", json{{"per_source", per_source}, {"global", global}});
}

int cmd_reduced(const RunConfig &cfg, bool matrices) {
    Run run(matrices ? "reduced" : "hidden-links", cfg);
    const Network net = load_network(cfg, run);
    if (cfg.selection.empty()) throw gmat::PreconditionError("--selection is required");
    const auto ids = load_selection(cfg, run, net);
    const std::size_t n = net.graph.node_count();
    if (ids.size() >= n) {
        throw gmat::PreconditionError("selection names all " + std::to_string(n) +
                                      " nodes; at least one node must remain outside it");
    }
    const gmat::ReducedSelection sel(ids, n);
    const gmat::GoogleOperator op(net.graph, cfg.alpha);
    gmat::ReducedOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.scatter_max_iter;
    opts.pagerank_tol = cfg.tol;
    opts.pagerank_max_iter = cfg.max_iter;
    const auto rm = gmat::reduced_google(op, sel, opts);

    std::vector<std::string> labels;
    for (auto id : ids) labels.push_back(net.labels.display(id));

    json meta;
    meta["alpha"] = rm.alpha;
    meta["node_count"] = n;
    meta["selection_size"] = ids.size();
    meta["selection"] = labels;
    meta["selection_ids"] = ids;
    meta["convention"] = "column = source, row = target";
    meta["lambda_c"] = rm.spectrum.lambda_c;
    meta["tolerances"] = {{"scatter", cfg.tol}, {"pagerank", cfg.tol}};
    meta["pagerank"] = report_json(rm.pagerank_report);
    meta["eigenmode"] = {{"right", report_json(rm.spectrum.right_report)},
                         {"left", report_json(rm.spectrum.left_report)}};
    json cols = json::array();
    std::size_t max_applications = 0;
    for (const auto &r : rm.column_reports) {
        cols.push_back(report_json(r));
        max_applications = std::max(max_applications, r.iterations);
    }
    meta["scatter_solves"] = std::move(cols);
    meta["scatter_max_applications"] = max_applications;
    meta["p_r"] = rm.p_r;
    meta["p_r_normalized"] = rm.p_r_normalized;
    meta["p_s_mass"] = rm.p_s_mass;
    meta["pr_cosine"] = rm.pr_cosine;

    if (matrices) {
        if (cfg.format == "csv") {
            write_matrix(run, "g_r", "reduced Google matrix G_R = G_rr + G_pr + G_qr", rm.g_r, labels);
            write_matrix(run, "g_rr", "direct component G_rr", rm.g_rr, labels);
            write_matrix(run, "g_pr", "leading-mode component G_pr", rm.g_pr, labels);
            write_matrix(run, "g_qr", "hidden component G_qr", rm.g_qr, labels);
        }
        meta["matrices"] = {{"g_r", matrix_json(rm.g_r)},
                            {"g_rr", matrix_json(rm.g_rr)},
                            {"g_pr", matrix_json(rm.g_pr)},
                            {"g_qr", matrix_json(rm.g_qr)}};
    }
    run.write_json("reduced.json", meta);
    write_hidden(run, cfg, gmat::hidden_links(rm, net.graph, sel, cfg.tol), labels);
    run.finish();
    return kOk;
}

// theta / kendall / topk over a manifest

struct Manifest {
    std::vector<gmat::io::ManifestEntry> entries;
    std::vector<gmat::Ranking> rankings;
};

Manifest load_manifest(const RunConfig &cfg, Run &run) {
    if (cfg.manifest.empty()) throw gmat::PreconditionError("--manifest is required");
    run.input("manifest", cfg.manifest);
    Manifest m;
    m.entries = gmat::io::read_manifest(cfg.manifest);
    for (const auto &e : m.entries) {
        run.input(e.code, e.path);
        m.rankings.push_back(gmat::io::read_ranking_file(e.path, e.code));
    }
    return m;
}

std::vector<gmat::Ranking> editions_of(const Manifest &m) {
    std::vector<gmat::Ranking> eds;
    for (std::size_t k = 0; k < m.entries.size(); ++k)
        if (!m.entries[k].external) eds.push_back(m.rankings[k]);
    return eds;
}

int cmd_theta(const RunConfig &cfg) {
    Run run("theta", cfg);
    const Manifest m = load_manifest(cfg, run);
    const auto eds = editions_of(m);
    const auto table = gmat::theta_scores(eds);
    json rows = json::array();
    for (const auto &e : table.entries) {
        rows.push_back({{"display_rank", e.display_rank},
                        {"entity_label", e.entity},
                        {"theta", e.theta},
                        {"score", e.score}});
    }
    if (cfg.format == "csv") {
        auto f = run.open("theta.csv");
        f << "display_rank,entity_label,theta\n";
        for (const auto &e : table.entries)
            f << e.display_rank << ',' << gmat::io::csv_field(e.entity) << ',' << fmt("%.3f", e.theta) << '\n';
    }
    json editions = json::array();
    for (const auto &e : eds) editions.push_back(e.name);
    run.write_json("theta.json", json{{"entity_count", table.entity_count},
                                      {"edition_count", table.edition_count},
                                      {"editions", editions},
                                      {"entries", rows}});
    run.finish();
    return kOk;
}

int cmd_kendall(const RunConfig &cfg) {
    Run run("kendall", cfg);
    const Manifest m = load_manifest(cfg, run);
    const auto eds = editions_of(m);
    std::vector<gmat::Ranking> all = eds;
    if (!eds.empty()) all.push_back(gmat::theta_scores(eds).as_ranking("THETA"));
    for (std::size_t k = 0; k < m.entries.size(); ++k)
        if (m.entries[k].external) all.push_back(m.rankings[k]);

    const std::size_t c = all.size();
    std::vector<std::vector<double>> d(c, std::vector<double>(c, 0.0));
    std::vector<std::vector<std::size_t>> shared(c, std::vector<std::size_t>(c, 0));
    for (std::size_t a = 0; a < c; ++a) {
        shared[a][a] = all[a].entities.size();
        for (std::size_t b = a + 1; b < c; ++b) {
            const auto [ra, rb] = gmat::restrict_common(all[a], all[b]);
            d[a][b] = d[b][a] = gmat::kendall_distance(ra.ranks, rb.ranks);
            shared[a][b] = shared[b][a] = ra.entities.size();
        }
    }
    json names = json::array();
    for (const auto &r : all) names.push_back(r.name);
    if (cfg.format == "csv") {
        auto f = run.open("kendall.csv");
        f << "ranking";
        for (const auto &r : all) f << ',' << gmat::io::csv_field(r.name);
        f << '\n';
        for (std::size_t a = 0; a < c; ++a) {
            f << gmat::io::csv_field(all[a].name);
            for (std::size_t b = 0; b < c; ++b) f << ',' << fmt("%.4f", d[a][b]);
            f << '\n';
        }
    }
    run.write_json("kendall.json", json{{"rankings", names}, {"distance", d}, {"common_entities", shared}});
    run.finish();
    return kOk;
}

int cmd_topk_manifest(const RunConfig &cfg) {
    Run run("topk", cfg);
    const Manifest m = load_manifest(cfg, run);
    std::vector<std::vector<std::string>> cols;
    for (const auto &r : m.rankings) {
        if (cfg.k > r.entities.size()) {
            throw gmat::PreconditionError("ranking " + r.name + " has " + std::to_string(r.entities.size()) +
                                          " entries, fewer than k = " + std::to_string(cfg.k));
        }
        std::vector<std::size_t> idx(r.entities.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
            return r.ranks[x] != r.ranks[y] ? r.ranks[x] < r.ranks[y] : r.entities[x] < r.entities[y];
        });
        std::vector<std::string> col;
        for (std::size_t k = 0; k < cfg.k; ++k) col.push_back(r.entities[idx[k]]);
        cols.push_back(std::move(col));
    }
    json j = json::object();
    for (std::size_t c = 0; c < cols.size(); ++c) j[m.rankings[c].name] = cols[c];
    if (cfg.format == "csv") {
        auto f = run.open("topk.csv");
        f << "position";
        for (const auto &r : m.rankings) f << ',' << gmat::io::csv_field(r.name);
        f << '\n';
        for (std::size_t k = 0; k < cfg.k; ++k) {
            f << k + 1;
            for (const auto &col : cols) f << ',' << gmat::io::csv_field(col[k]);
            f << '\n';
        }
    }
    run.write_json("topk.json", json{{"k", cfg.k}, {"columns", j}});
    run.finish();
    return kOk;
}

int cmd_topk(const RunConfig &cfg) {
    if (!cfg.manifest.empty()) return cmd_topk_manifest(cfg);
    Run run("topk", cfg);
    const Network net = load_network(cfg, run);
    const auto selection = load_selection(cfg, run, net);
    const bool chei = cfg.kind == "cheirank";
    const auto result = chei ? gmat::cheirank(net.graph, power_options(cfg)) : gmat::pagerank(net.graph, power_options(cfg));
    const auto names = gmat::topk_table(result.ranks, net.labels, cfg.k, selection);

    std::vector<gmat::NodeId> picked;
    if (selection.empty()) {
        picked.assign(result.ranks.order().begin(), result.ranks.order().begin() + static_cast<std::ptrdiff_t>(cfg.k));
    } else {
        picked = selection;
        std::sort(picked.begin(), picked.end(),
                  [&](auto x, auto y) { return result.ranks.rank_of(x) < result.ranks.rank_of(y); });
        picked.resize(cfg.k);
    }
    json rows = json::array();
    for (std::size_t k = 0; k < picked.size(); ++k) {
        const auto id = picked[k];
        rows.push_back({{"position", k + 1},
                        {"global_rank", result.ranks.rank_of(id)},
                        {"node_id", id},
                        {"label", names[k]},
                        {"probability", result.probabilities.values[id]}});
    }
    if (cfg.format == "csv") {
        auto f = run.open("topk.csv");
        not_converged_note(f, result.report);
        f << "position,global_rank,node_id,label,probability\n";
        for (std::size_t k = 0; k < picked.size(); ++k) {
            const auto id = picked[k];
            f << k + 1 << ',' << result.ranks.rank_of(id) << ',' << id << ',' << gmat::io::csv_field(names[k])
              << ',' << prob(result.probabilities.values[id]) << '\n';
        }
    }
    run.write_json("topk.json", json{{"kind", cfg.kind}, {"k", cfg.k}, {"report", report_json(result.report)}, {"rows", rows}});
    run.finish();
    return result.report.converged ? kOk : kNotConverged;
}

// density / stats

int cmd_density(const RunConfig &cfg) {
    Run run("density", cfg);
    const Network net = load_network(cfg, run);
    const auto pr = gmat::pagerank(net.graph, power_options(cfg));
    const auto cr = gmat::cheirank(net.graph, power_options(cfg));
    const auto grid = gmat::density_grid(pr.ranks, cr.ranks);
    constexpr std::size_t B = gmat::DensityGrid::kBins;

    json counts = json::array();
    for (std::size_t ks = 0; ks < B; ++ks) {
        json row = json::array();
        for (std::size_t k = 0; k < B; ++k) row.push_back(grid.count(k, ks));
        counts.push_back(std::move(row));
    }
    if (cfg.format == "csv") {
        auto f = run.open("density.csv");
        f << "# rows: CheiRank bin (log10 K*), columns: PageRank bin (log10 K); axis edges in density_axes.json\n";
        for (std::size_t ks = 0; ks < B; ++ks) {
            for (std::size_t k = 0; k < B; ++k) f << (k ? "," : "") << grid.count(k, ks);
            f << '\n';
        }
    }
    json axes{{"node_count", grid.node_count()},
              {"bins", B},
              {"edges_log10", grid.edges()},
              {"rows", "cheirank"},
              {"columns", "pagerank"},
              {"pagerank", report_json(pr.report)},
              {"cheirank", report_json(cr.report)}};
    run.write_json("density_axes.json", axes);
    run.write_json("density.json", json{{"counts", counts}});
    run.finish();
    return pr.report.converged && cr.report.converged ? kOk : kNotConverged;
}

int cmd_stats(const RunConfig &cfg) {
    Run run("stats", cfg);
    const Network net = load_network(cfg, run);
    const auto s = gmat::graph_stats(net.graph);
    json j{{"n", s.n},
           {"edge_count", s.edge_count},
           {"density", s.density},
           {"mean_degree", s.mean_degree},
           {"dangling_count", s.dangling_count},
           {"input_edges", net.diagnostics.input_edges},
           {"self_loops_dropped", net.diagnostics.self_loops_dropped},
           {"duplicates_dropped", net.diagnostics.duplicates_dropped}};
    if (cfg.format == "csv") {
        auto f = run.open("stats.csv");
        f << "n,edge_count,density,mean_degree,dangling_count\n"
          << s.n << ',' << s.edge_count << ',' << fmt("%.6g", s.density) << ',' << fmt("%.4f", s.mean_degree)
          << ',' << s.dangling_count << '\n';
    }
    run.write_json("stats.json", j);
    run.finish();
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Google-matrix analysis of directed networks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App *sub, bool network, bool solver) {
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--format", cfg.format, "table format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        if (network) {
            sub->add_option("--edges", cfg.edges, "edge list file")->check(CLI::ExistingFile);
            sub->add_option("--labels", cfg.labels, "id<TAB>label file")->check(CLI::ExistingFile);
        }
        if (solver) {
            sub->add_option("--alpha", cfg.alpha, "damping factor")->capture_default_str();
            sub->add_option("--tol", cfg.tol, "L1 tolerance")->capture_default_str();
            sub->add_option("--max-iter", cfg.max_iter, "power-iteration cap")->capture_default_str();
            sub->add_option("--threads", cfg.threads, "worker threads, 0 = auto")
                ->envname("GMAT_THREADS")
                ->check(CLI::NonNegativeNumber);
        }
    };

    auto *pr = app.add_subcommand("pagerank", "PageRank probabilities and ranks");
    auto *cr = app.add_subcommand("cheirank", "CheiRank probabilities and ranks");
    for (auto *s : {pr, cr}) {
        common(s, true, true);
        s->add_option("--selection", cfg.selection, "also rank this subset")->check(CLI::ExistingFile);
    }
    auto *red = app.add_subcommand("reduced", "reduced Google matrix of a selection");
    auto *hid = app.add_subcommand("hidden-links", "hidden links of a selection");
    for (auto *s : {red, hid}) {
        common(s, true, true);
        s->add_option("--selection", cfg.selection, "selection file")->check(CLI::ExistingFile);
        s->add_option("--scatter-max-iter", cfg.scatter_max_iter, "cap per scatter solve")->capture_default_str();
    }
    auto *th = app.add_subcommand("theta", "Theta composite over the manifest editions");
    auto *kd = app.add_subcommand("kendall", "pairwise Kendall distances");
    for (auto *s : {th, kd}) {
        common(s, false, false);
        s->add_option("--manifest", cfg.manifest, "code,path[,edition|external]")->required()->check(CLI::ExistingFile);
    }
    auto *de = app.add_subcommand("density", "(K, K*) density grid");
    common(de, true, true);
    auto *tk = app.add_subcommand("topk", "top-k tables");
    common(tk, true, true);
    tk->add_option("--manifest", cfg.manifest, "rank files instead of a graph")->check(CLI::ExistingFile);
    tk->add_option("--selection", cfg.selection, "restrict to this subset")->check(CLI::ExistingFile);
    tk->add_option("--kind", cfg.kind)->check(CLI::IsMember({"pagerank", "cheirank"}))->capture_default_str();
    tk->add_option("-k,--k", cfg.k)->capture_default_str();
    auto *st = app.add_subcommand("stats", "graph statistics");
    common(st, true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        gmat::set_thread_count(cfg.threads);
        if (*pr) return cmd_rank(cfg, gmat::RankKind::pagerank);
        if (*cr) return cmd_rank(cfg, gmat::RankKind::cheirank);
        if (*red) return cmd_reduced(cfg, true);
        if (*hid) return cmd_reduced(cfg, false);
        if (*th) return cmd_theta(cfg);
        if (*kd) return cmd_kendall(cfg);
        if (*de) return cmd_density(cfg);
        if (*tk) return cmd_topk(cfg);
        if (*st) return cmd_stats(cfg);
    } catch (const gmat::ParseError &e) {
        std::cerr << "gmat: parse error: " << e.what() << '\n';
        return kParse;
    } catch (const gmat::PreconditionError &e) {
        std::cerr << "gmat: " << e.what() << '\n';
        return kPrecondition;
    } catch (const gmat::ConvergenceError &e) {
        std::cerr << "gmat: not converged: " << e.what() << '\n';
        return kNotConverged;
    } catch (const std::exception &e) {
        std::cerr << "gmat: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
