#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gmat/analytics.hpp"
#include "gmat/graph.hpp"
#include "gmat/labels.hpp"

namespace gmat::io {

/// Parsed edge file. `node_bound` is one past the largest id seen, or the
/// value of a `# nodes <N>` directive when present and larger.
struct EdgeList {
    std::vector<Edge> edges;
    std::size_t node_bound = 0;
};

/// Edge file: one "src<TAB>dst" pair of decimal ids per line. Lines starting
/// with '#' are comments, blank lines are skipped, and CRLF endings are
/// accepted. Errors throw `ParseError` with the 1-based line number.
EdgeList read_edges(std::istream &in);
EdgeList read_edge_file(const std::filesystem::path &path);

/// Canonical form: a `# nodes <N>` directive, then edges by source and target.
void write_edges(std::ostream &out, const DirectedGraph &g);
void write_edge_file(const std::filesystem::path &path, const DirectedGraph &g);

/// Label file: "id<TAB>label" per line, UTF-8.
NodeLabelMap read_labels(std::istream &in);
NodeLabelMap read_label_file(const std::filesystem::path &path);

/// Selection file: one node label or decimal id per line. A line is taken as a
/// label when `labels` knows it, otherwise as an id. Unknown entries are all
/// reported in one `PreconditionError`.
std::vector<NodeId> read_selection(std::istream &in, const NodeLabelMap &labels,
                                   std::size_t node_count);
std::vector<NodeId> read_selection_file(const std::filesystem::path &path,
                                        const NodeLabelMap &labels, std::size_t node_count);

/// Ranking CSV: "entity_label,rank" per line; an optional header row whose
/// second field is not a number is skipped.
Ranking read_ranking(std::istream &in, std::string name);
Ranking read_ranking_file(const std::filesystem::path &path, std::string name);
void write_ranking(std::ostream &out, const Ranking &ranking);

struct ManifestEntry {
    std::string code;
    std::filesystem::path path;
    bool external = false; ///< not an edition; excluded from the Theta composite
};

/// Manifest CSV: "code,path[,edition|external]". Relative paths resolve
/// against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path);

/// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no = 0);

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_field(std::string_view value);

/// Strips a trailing '\r'.
std::string_view chomp(std::string_view line);

} // namespace gmat::io
