#include "tracemine/dag_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tracemine {

void save_dag(const LabeledDag& dag, std::ostream& out) {
    out << "dag v=" << dag.vertex_count() << " e=" << dag.edge_count() << "\n";
    for (VertexId v = 0; v < dag.vertex_count(); ++v) {
        out << "vertex " << v << " " << dag.label_name(v) << "\n";
    }
    for (VertexId v = 0; v < dag.vertex_count(); ++v) {
        for (VertexId w : dag.out_edges(v)) {
            out << "edge " << v << " " << w << "\n";
        }
    }
}

void save_dag(const LabeledDag& dag, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    save_dag(dag, out);
    out.flush();
    if (!out) throw Error("write to '" + path + "' failed");
}

namespace {

std::uint64_t parse_uint(std::string_view text, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(text) + "'", line);
    }
    return value;
}

// Splits off the next space-delimited token; returns false if none left.
bool next_token(std::string_view& rest, std::string_view& token) {
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    if (rest.empty()) return false;
    std::size_t end = rest.find(' ');
    token = rest.substr(0, end);
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end + 1);
    return true;
}

} // namespace

LabeledDag load_dag(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    auto read_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
        return true;
    };

    if (!read_line()) throw ParseError("missing header", 1);
    std::uint64_t n = 0, k = 0;
    {
        std::string_view rest = line;
        std::string_view tok;
        if (!next_token(rest, tok) || tok != "dag") {
            throw ParseError("expected header 'dag v=<n> e=<k>'", line_no);
        }
        if (!next_token(rest, tok) || tok.substr(0, 2) != "v=") {
            throw ParseError("expected 'v=<n>' in header", line_no);
        }
        n = parse_uint(tok.substr(2), line_no, "vertex count");
        if (!next_token(rest, tok) || tok.substr(0, 2) != "e=") {
            throw ParseError("expected 'e=<k>' in header", line_no);
        }
        k = parse_uint(tok.substr(2), line_no, "edge count");
    }
    if (n > UINT32_MAX) throw ParseError("vertex count exceeds 32-bit range", line_no);

    LabelDict dict;
    std::vector<Label> labels(n, 0);
    std::vector<bool> declared(n, false);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!read_line()) throw ParseError("unexpected end of file in vertex section", line_no + 1);
        std::string_view rest = line;
        std::string_view tok;
        if (!next_token(rest, tok) || tok != "vertex") {
            throw ParseError("expected 'vertex <id> <label>'", line_no);
        }
        if (!next_token(rest, tok)) throw ParseError("missing vertex id", line_no);
        std::uint64_t id = parse_uint(tok, line_no, "vertex id");
        if (id >= n) throw ParseError("vertex id " + std::to_string(id) + " out of range", line_no);
        if (declared[id]) throw ParseError("vertex " + std::to_string(id) + " declared twice", line_no);
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        if (rest.empty()) throw ParseError("missing label string", line_no);
        declared[id] = true;
        labels[id] = dict.intern(rest);
    }

    std::vector<Edge> edges;
    edges.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        if (!read_line()) throw ParseError("unexpected end of file in edge section", line_no + 1);
        std::string_view rest = line;
        std::string_view tok;
        if (!next_token(rest, tok) || tok != "edge") {
            throw ParseError("expected 'edge <src> <dst>'", line_no);
        }
        if (!next_token(rest, tok)) throw ParseError("missing edge source", line_no);
        std::uint64_t src = parse_uint(tok, line_no, "edge source");
        if (!next_token(rest, tok)) throw ParseError("missing edge destination", line_no);
        std::uint64_t dst = parse_uint(tok, line_no, "edge destination");
        if (next_token(rest, tok)) throw ParseError("trailing content after edge", line_no);
        if (src >= n || dst >= n) {
            throw ParseError("edge (" + std::to_string(src) + "," + std::to_string(dst) +
                             ") references an undeclared vertex", line_no);
        }
        edges.emplace_back(static_cast<VertexId>(src), static_cast<VertexId>(dst));
    }
    while (read_line()) {
        if (!line.empty()) throw ParseError("trailing content after edge section", line_no);
    }

    return build_dag(std::move(labels), edges, std::move(dict));
}

LabeledDag load_dag(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return load_dag(in);
}

} // namespace tracemine
