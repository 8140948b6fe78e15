#include "gmat/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "gmat/error.hpp"

namespace gmat::io {

namespace {

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
    const auto lo = s.find_first_not_of(" \t");
    if (lo == std::string_view::npos) {
        return {};
    }
    const auto hi = s.find_last_not_of(" \t");
    return s.substr(lo, hi - lo + 1);
}

template <class T>
bool parse_number(std::string_view s, T &value) {
    s = trim(s);
    const char *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    return ec == std::errc() && ptr == end && !s.empty();
}

NodeId parse_id(std::string_view s, std::size_t line_no) {
    std::uint64_t v = 0;
    if (!parse_number(s, v)) {
        throw ParseError("expected a non-negative decimal node id, got '" + std::string(s) + "'",
                         line_no);
    }
    if (v > 0xffffffffu) {
        throw ParseError("node id " + std::string(s) + " exceeds the 32-bit range", line_no);
    }
    return static_cast<NodeId>(v);
}

} // namespace

std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

EdgeList read_edges(std::istream &in) {
    EdgeList list;
    std::size_t declared = 0;
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(in, buffer)) {
        ++line_no;
        const std::string_view line = chomp(buffer);
        if (line.empty() || is_blank(line)) {
            continue;
        }
        if (line.front() == '#') {
            constexpr std::string_view directive = "# nodes";
            if (line.starts_with(directive)) {
                std::uint64_t n = 0;
                if (!parse_number(line.substr(directive.size()), n)) {
                    throw ParseError("malformed '# nodes' directive", line_no);
                }
                declared = n;
            }
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError("expected 'src<TAB>dst'", line_no);
        }
        const NodeId src = parse_id(line.substr(0, tab), line_no);
        const NodeId dst = parse_id(line.substr(tab + 1), line_no);
        list.edges.push_back({src, dst});
        const std::size_t bound = std::size_t{src > dst ? src : dst} + 1;
        if (bound > list.node_bound) {
            list.node_bound = bound;
        }
    }
    if (declared > list.node_bound) {
        list.node_bound = declared;
    }
    return list;
}

EdgeList read_edge_file(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_edges(in);
}

void write_edges(std::ostream &out, const DirectedGraph &g) {
    out << "# nodes " << g.node_count() << '\n';
    for (std::size_t src = 0; src < g.node_count(); ++src) {
        for (NodeId dst : g.out_neighbors(static_cast<NodeId>(src))) {
            out << src << '\t' << dst << '\n';
        }
    }
}

void write_edge_file(const std::filesystem::path &path, const DirectedGraph &g) {
    auto out = open_output(path);
    write_edges(out, g);
}

NodeLabelMap read_labels(std::istream &in) {
    NodeLabelMap labels;
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(in, buffer)) {
        ++line_no;
        const std::string_view line = chomp(buffer);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParseError("expected 'id<TAB>label'", line_no);
        }
        const NodeId id = parse_id(line.substr(0, tab), line_no);
        try {
            labels.add(id, std::string(line.substr(tab + 1)));
        } catch (const PreconditionError &e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return labels;
}

NodeLabelMap read_label_file(const std::filesystem::path &path) {
    auto in = open_input(path);
    return read_labels(in);
}

std::vector<NodeId> read_selection(std::istream &in, const NodeLabelMap &labels,
                                   std::size_t node_count) {
    std::vector<NodeId> ids;
    std::vector<std::string> unknown;
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(in, buffer)) {
        ++line_no;
        const std::string_view line = trim(chomp(buffer));
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (const auto id = labels.find(line)) {
            ids.push_back(*id);
            continue;
        }
        std::uint64_t v = 0;
        if (parse_number(line, v) && v < node_count) {
            ids.push_back(static_cast<NodeId>(v));
            continue;
        }
        unknown.push_back("line " + std::to_string(line_no) + " '" + std::string(line) + "'");
    }
    if (!unknown.empty()) {
        std::string msg = "unknown selection entries:";
        for (const auto &u : unknown) {
            msg += " " + u + ";";
        }
        msg.pop_back();
        throw PreconditionError(msg);
    }
    return ids;
}

std::vector<NodeId> read_selection_file(const std::filesystem::path &path,
                                        const NodeLabelMap &labels, std::size_t node_count) {
    auto in = open_input(path);
    return read_selection(in, labels, node_count);
}

std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted) {
        throw ParseError("unterminated quoted field", line_no);
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(value);
    }
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

Ranking read_ranking(std::istream &in, std::string name) {
    Ranking r;
    r.name = std::move(name);
    std::string buffer;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, buffer)) {
        ++line_no;
        const std::string_view line = chomp(buffer);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_csv(line, line_no);
        if (fields.size() != 2) {
            throw ParseError("expected 'entity_label,rank'", line_no);
        }
        std::uint32_t rank = 0;
        if (!parse_number(fields[1], rank)) {
            if (first) {
                first = false;
                continue;
            }
            throw ParseError("rank '" + fields[1] + "' is not a positive integer", line_no);
        }
        first = false;
        r.entities.push_back(fields[0]);
        r.ranks.push_back(rank);
    }
    return r;
}

Ranking read_ranking_file(const std::filesystem::path &path, std::string name) {
    auto in = open_input(path);
    try {
        return read_ranking(in, std::move(name));
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_ranking(std::ostream &out, const Ranking &ranking) {
    out << "entity_label,rank\n";
    for (std::size_t k = 0; k < ranking.entities.size(); ++k) {
        out << csv_field(ranking.entities[k]) << ',' << ranking.ranks[k] << '\n';
    }
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path) {
    auto in = open_input(path);
    const auto base = path.parent_path();
    std::vector<ManifestEntry> entries;
    std::string buffer;
    std::size_t line_no = 0;
    while (std::getline(in, buffer)) {
        ++line_no;
        const std::string_view line = chomp(buffer);
        if (line.empty() || line.front() == '#' || is_blank(line)) {
            continue;
        }
        const auto fields = split_csv(line, line_no);
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError(path.string() + ": expected 'code,path[,edition|external]'", line_no);
        }
        ManifestEntry entry;
        entry.code = std::string(trim(fields[0]));
        if (entry.code == "code") {
            continue;
        }
        entry.path = std::filesystem::path(std::string(trim(fields[1])));
        if (entry.path.is_relative()) {
            entry.path = base / entry.path;
        }
        if (fields.size() == 3) {
            const auto kind = trim(fields[2]);
            if (kind == "external") {
                entry.external = true;
            } else if (kind != "edition") {
                throw ParseError(path.string() + ": unknown entry kind '" + std::string(kind) + "'",
                                 line_no);
            }
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace gmat::io
